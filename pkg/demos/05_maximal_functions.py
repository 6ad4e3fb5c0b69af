"""Maximal functions and the order relations that make them useful.

The weighted sup (Peetre-Fefferman-Stein) and the ball-mean sup
(Hardy-Littlewood) both dominate |f| pointwise; the mean-difference
maximal quasinorms order themselves the same way (a mean at a fixed
scale is at most the sup over scales).
"""

import numpy as np

from lplab import (
    GridSpec,
    SpaceParams,
    TestFunctionSpec,
    default_quadrature,
    hardy_littlewood_max,
    maximal_quasinorm_set,
    peetre_max,
    sample_family,
)

grid = GridSpec(dim=2, n=32, box=1.0)
field = sample_family(
    TestFunctionSpec(family="modulated_gaussian", width=1.0 / 8.0,
                     modulation=(4, 0)),
    grid,
)
mag = np.abs(field.data)

P = peetre_max(field, t=8.0, r=1.5).data.real
M = hardy_littlewood_max(field).data.real
print("pointwise domination on a 32x32 grid:")
print(f"  min(P f - |f|) = {np.min(P - mag):.3e}  (>= 0 everywhere)")
print(f"  min(M f - |f|) = {np.min(M - mag):.3e}  (>= 0 everywhere)")
print(f"  sup P f / sup |f| = {P.max() / mag.max():.3f}")
print(f"  sup M f / sup |f| = {M.max() / mag.max():.3f}\n")

params = SpaceParams(s=0.5, p=2, q=2, L=1, r=1.5)
quad = default_quadrature(grid, sphere_nodes=8, tau_nodes_per_octave=4,
                          tau_octaves=3)
res = maximal_quasinorm_set(field, params, ("S", "S_SUP", "V", "D_SUP"), quad)
print("mean-difference maximal quasinorms:")
for variant in ("S", "S_SUP", "V", "D_SUP"):
    print(f"  {variant:6s} {res[variant].value:12.6f}")
print(f"\nS <= S_SUP: {res['S'].value <= res['S_SUP'].value}")
print(f"V <= D_SUP: {res['V'].value <= res['D_SUP'].value}")
print("fixing the step scale can only lose mass against the sup over")
print("scales, so these inequalities hold function by function.")
