"""Dyadic Littlewood-Paley band systems on the frequency lattice.

The radial profile chi is exactly 1 below 1, exactly 0 above 2, and on
(1, 2) equals s(2-u) / (s(2-u) + s(u-1)) with s(t) = exp(-kappa/t), so the
annulus multiplier psi_hat(xi) = chi(|xi|) - chi(2|xi|) is supported in
{1/2 <= |xi| < 2}, takes values in [0, 1], and the shifted copies
psi_hat(2^-j xi) telescope to an exact partition of unity away from zero
frequency.  kappa (transition_sharpness) reshapes the crossover without
moving its endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BandOutOfRange,
    BandRangeEmpty,
    EmptyDecomposition,
    GridMismatch,
    RangeTooNarrow,
    UnresolvedEnergy,
)
from .fields import (
    COMPLEX,
    GridSpec,
    SampledField,
    SpectralField,
    resolvable_band_range,
    stable_sum,
    to_sampled,
    to_spectral,
)


def dyadic_profile(u, sharpness: float = 1.0) -> np.ndarray:
    """Radial cutoff chi: 1 on [0, 1], 0 on [2, inf), smooth crossover."""
    u = np.asarray(u, dtype=np.float64)
    out = np.ones(u.shape)
    out[u >= 2.0] = 0.0
    mid = (u > 1.0) & (u < 2.0)
    if np.any(mid):
        t_fall = 2.0 - u[mid]
        t_rise = u[mid] - 1.0
        s_fall = np.exp(-sharpness / t_fall)
        s_rise = np.exp(-sharpness / t_rise)
        out[mid] = s_fall / (s_fall + s_rise)
    return out


def band_profile(u, sharpness: float = 1.0) -> np.ndarray:
    """Annulus multiplier psi_hat(u) = chi(u) - chi(2u), supported in [1/2, 2)."""
    u = np.asarray(u, dtype=np.float64)
    return dyadic_profile(u, sharpness) - dyadic_profile(2.0 * u, sharpness)


@dataclass(frozen=True)
class DyadicBandSystem:
    """Band indices [j_min, j_max] realizable on a grid, with the profile knob."""

    grid: GridSpec
    j_min: int
    j_max: int
    sharpness: float = 1.0

    def __post_init__(self) -> None:
        if self.j_min > self.j_max:
            raise BandRangeEmpty(f"j_min {self.j_min} > j_max {self.j_max}")
        lo, hi = resolvable_band_range(self.grid)
        if self.j_min < lo or self.j_max > hi:
            raise BandOutOfRange(
                f"bands [{self.j_min}, {self.j_max}] exceed grid capability [{lo}, {hi}]"
            )
        if self.j_max - self.j_min + 1 < 3:
            raise RangeTooNarrow(
                f"grid supports only {self.j_max - self.j_min + 1} bands, need >= 3"
            )
        if not (self.sharpness > 0):
            raise BandRangeEmpty(f"sharpness must be positive, got {self.sharpness}")

    @property
    def band_indices(self) -> range:
        return range(self.j_min, self.j_max + 1)

    def band_multiplier(self, j: int) -> np.ndarray:
        """psi_hat(2^-j |xi|) on the FFT-ordered lattice."""
        radii = self.grid.frequency_radii()
        return band_profile(radii * 2.0 ** (-j), self.sharpness)

    def lowpass_multiplier(self) -> np.ndarray:
        """chi(2^-(j_min-1) |xi|), covering |xi| <= 2^(j_min-1) exactly."""
        radii = self.grid.frequency_radii()
        return dyadic_profile(radii * 2.0 ** (-(self.j_min - 1)), self.sharpness)


def build_band_system(
    grid: GridSpec,
    j_min: int | None = None,
    j_max: int | None = None,
    sharpness: float = 1.0,
) -> DyadicBandSystem:
    """Band system with grid-derived defaults for the index range."""
    lo, hi = resolvable_band_range(grid)
    return DyadicBandSystem(
        grid=grid,
        j_min=lo if j_min is None else j_min,
        j_max=hi if j_max is None else j_max,
        sharpness=sharpness,
    )


def band_project(field: SampledField, system: DyadicBandSystem, j: int) -> SampledField:
    """Spectral projection of the field onto dyadic band j."""
    if field.grid != system.grid:
        raise GridMismatch("field and band system live on different grids")
    if j < system.j_min or j > system.j_max:
        raise BandOutOfRange(f"band {j} outside [{system.j_min}, {system.j_max}]")
    spec = to_spectral(field)
    return to_sampled(SpectralField(field.grid, spec.coeffs * system.band_multiplier(j)))


def lowpass_project(field: SampledField, system: DyadicBandSystem) -> SampledField:
    """Projection onto the lowpass complement below band j_min."""
    if field.grid != system.grid:
        raise GridMismatch("field and band system live on different grids")
    spec = to_spectral(field)
    return to_sampled(SpectralField(field.grid, spec.coeffs * system.lowpass_multiplier()))


@dataclass(frozen=True, eq=False)
class BandDecomposition:
    """Ordered band fields, optional lowpass, and the truncation diagnostic.

    truncated_energy is the relative spectral energy the decomposition cannot
    represent: outside [2^(j_min-1), 2^(j_max+1)) in homogeneous mode (zero
    frequency excluded on both sides of the ratio, constants being the
    periodic analogue of the quotiented polynomials), above 2^(j_max+1) in
    inhomogeneous mode.
    """

    system: DyadicBandSystem
    bands: tuple[tuple[int, SampledField], ...]
    lowpass: SampledField | None
    truncated_energy: float
    homogeneous: bool

    def __post_init__(self) -> None:
        if not self.bands and self.lowpass is None:
            raise EmptyDecomposition("decomposition holds no bands and no lowpass")
        js = [j for j, _ in self.bands]
        if any(b <= a for a, b in zip(js, js[1:])):
            raise EmptyDecomposition(f"band indices must strictly increase, got {js}")

    def band(self, j: int) -> SampledField:
        for jj, f in self.bands:
            if jj == j:
                return f
        raise BandOutOfRange(f"band {j} not in decomposition")

    def validate_supports(self, tol: float = 1e-14) -> None:
        """Check each band's spectrum vanishes off its annulus to tol * peak."""
        for j, f in self.bands:
            coeffs = to_spectral(f).coeffs
            peak = float(np.max(np.abs(coeffs)))
            if peak == 0.0:
                continue
            radii = self.system.grid.frequency_radii()
            outside = (radii < 2.0 ** (j - 1)) | (radii >= 2.0 ** (j + 1))
            leak = float(np.max(np.abs(coeffs[outside]))) if np.any(outside) else 0.0
            if leak > tol * peak:
                raise UnresolvedEnergy(
                    f"band {j} leaks {leak / peak:.2e} of its peak outside the annulus"
                )


def decompose(
    field: SampledField,
    system: DyadicBandSystem,
    homogeneous: bool = True,
    unresolved_tol: float = 1e-10,
) -> BandDecomposition:
    """Split a field into its dyadic bands.

    Homogeneous mode drops the zero mode (the quotiented constant) and
    requires the relative energy outside [2^(j_min-1), 2^(j_max+1)) to stay
    below unresolved_tol.  Inhomogeneous mode keeps a lowpass field covering
    everything below band j_min and only energy above 2^(j_max+1) counts as
    unresolved.  The measured fraction is stored either way.
    """
    if field.grid != system.grid:
        raise GridMismatch("field and band system live on different grids")
    grid = system.grid
    spec = to_spectral(field)
    radii = grid.frequency_radii()
    power = np.abs(spec.coeffs) ** 2
    nonzero = radii > 0.0
    lo_edge = 2.0 ** (system.j_min - 1)
    hi_edge = 2.0 ** (system.j_max + 1)

    if homogeneous:
        total = stable_sum(power[nonzero])
        outside = nonzero & ((radii < lo_edge) | (radii >= hi_edge))
        lost = stable_sum(power[outside]) if np.any(outside) else 0.0
        fraction = lost / total if total > 0.0 else 0.0
        if fraction > unresolved_tol:
            raise UnresolvedEnergy(
                f"{fraction:.3e} of the nonzero-frequency energy lies outside "
                f"[{lo_edge:g}, {hi_edge:g}); tolerance {unresolved_tol:g}"
            )
        coeffs = np.where(nonzero, spec.coeffs, 0.0 + 0.0j)
        lowpass = None
    else:
        total = stable_sum(power)
        outside = radii >= hi_edge
        lost = stable_sum(power[outside]) if np.any(outside) else 0.0
        fraction = lost / total if total > 0.0 else 0.0
        if fraction > unresolved_tol:
            raise UnresolvedEnergy(
                f"{fraction:.3e} of the energy lies above |xi| = {hi_edge:g}; "
                f"tolerance {unresolved_tol:g}"
            )
        coeffs = spec.coeffs
        lowpass = to_sampled(
            SpectralField(grid, coeffs * system.lowpass_multiplier())
        )

    bands = []
    for j in system.band_indices:
        fj = to_sampled(SpectralField(grid, coeffs * system.band_multiplier(j)))
        bands.append((j, fj))
    return BandDecomposition(
        system=system,
        bands=tuple(bands),
        lowpass=lowpass,
        truncated_energy=float(fraction),
        homogeneous=homogeneous,
    )


def reconstruct(decomposition: BandDecomposition) -> SampledField:
    """Sum the bands (plus lowpass when present)."""
    grid = decomposition.system.grid
    acc = np.zeros(grid.shape, dtype=COMPLEX)
    for _, f in decomposition.bands:
        acc = acc + f.data
    if decomposition.lowpass is not None:
        acc = acc + decomposition.lowpass.data
    return SampledField(grid, acc)
