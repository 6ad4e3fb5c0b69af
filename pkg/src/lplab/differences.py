"""Iterated forward differences of sampled fields.

The L-fold difference with step h is

    diff(f, h, 1)(x) = f(x + h) - f(x),      diff(f, h, L) = diff(diff(f, h, L-1), h, 1),

equivalently the spectral multiplier (exp(2 pi i h.xi) - 1)^L.  The shift
path composes exact circular shifts and therefore needs h on the sample
lattice; the spectral path accepts any real step and is exact on the
trigonometric interpolant of the samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidAxis, InvalidExponent, MisalignedStep, ShapeMismatch
from .fields import GridSpec, SampledField, SpectralField, to_sampled, to_spectral

ALIGNMENT_TOL = 1e-9


@dataclass(frozen=True)
class DifferenceSpec:
    """Order and evaluation path of an iterated difference."""

    order: int
    method: str = "spectral"

    def __post_init__(self) -> None:
        if self.order < 1:
            raise InvalidExponent(f"difference order must be >= 1, got {self.order}")
        if self.method not in ("shift", "spectral"):
            raise InvalidExponent(f"method must be 'shift' or 'spectral', got {self.method!r}")


def difference_coefficients(order: int) -> np.ndarray:
    """Weights d_j with sign (-1)^(L+1) diff(f,h,L)(x) = sum_j d_j f(x+jh) - f(x).

    d_j = (-1)^(j+1) binom(L, j) for j = 1..L; the weights always sum to 1.
    """
    if order < 1:
        raise InvalidExponent(f"difference order must be >= 1, got {order}")
    return np.array(
        [(-1) ** (j + 1) * math.comb(order, j) for j in range(1, order + 1)],
        dtype=np.int64,
    )


def _lattice_steps(grid: GridSpec, step: tuple[float, ...]) -> tuple[int, ...]:
    out = []
    for a, h in enumerate(step):
        ratio = h / grid.spacing
        nearest = round(ratio)
        if abs(ratio - nearest) > ALIGNMENT_TOL * max(1.0, abs(ratio)):
            raise MisalignedStep(
                f"step component {h:g} on axis {a} is not a multiple of spacing {grid.spacing:g}"
            )
        out.append(int(nearest))
    return tuple(out)


def iterated_difference(
    field: SampledField,
    step: tuple[float, ...],
    order: int,
    method: str = "spectral",
) -> SampledField:
    """L-fold forward difference with vector step h."""
    DifferenceSpec(order, method)
    grid = field.grid
    if len(step) != grid.dim:
        raise ShapeMismatch(f"step has {len(step)} components, grid dim {grid.dim}")
    if method == "shift":
        rolls = _lattice_steps(grid, step)
        data = field.data
        for _ in range(order):
            shifted = np.roll(data, shift=tuple(-r for r in rolls), axis=tuple(range(grid.dim)))
            data = shifted - data
        return SampledField(grid, data)
    spec = to_spectral(field)
    phase = np.zeros(grid.shape, dtype=np.float64)
    for a, kk in enumerate(grid.frequency_lattice()):
        phase = phase + kk.astype(np.float64) * (step[a] / grid.box)
    symbol = (np.exp(2j * np.pi * phase) - 1.0) ** order
    return to_sampled(SpectralField(grid, spec.coeffs * symbol))


def axis_difference(
    field: SampledField,
    t: float,
    axis: int,
    order: int,
    method: str = "spectral",
) -> SampledField:
    """Iterated difference along one coordinate axis with scalar step t."""
    if not (0 <= axis < field.grid.dim):
        raise InvalidAxis(f"axis {axis} outside range(dim={field.grid.dim})")
    step = tuple(t if a == axis else 0.0 for a in range(field.grid.dim))
    return iterated_difference(field, step, order, method)
