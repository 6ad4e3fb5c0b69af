"""Equivalence of two characterizations, demonstrated over a corpus.

An equivalence claim is only checkable inside its hypothesis window on
(s, p, q, L).  Inside the window, the ratio of the two quasinorms stays
within a bounded spread across very different functions and is
invariant under dilation; outside, the experiment refuses to rule.
"""

from lplab import (
    GridSpec,
    SpaceParams,
    default_corpus,
    equivalence_experiment,
)

grid = GridSpec(dim=1, n=512, box=1.0)
corpus = default_corpus(grid)

params = SpaceParams(s=0.5, p=2, q=2, L=1)
rep = equivalence_experiment(corpus, ("lp", "diff"), params, grid, "T2i")
print(f"window: {rep.hypothesis.window}  "
      f"(satisfied: {rep.hypothesis.satisfied})\n")
print("function          lp / diff ratio   flags")
for entry in rep.per_function:
    print(f"{entry.label:16s} {entry.ratio:12.6f}     {entry.flags[0]}, {entry.flags[1]}")
print(f"\nspread max/min = {rep.spread:.4f} (limit {rep.spread_limit})")
print(f"dilation drift = {rep.dilation_drift:.2e} (limit {rep.drift_limit})")
print(f"verdict: {rep.verdict}\n")

outside = SpaceParams(s=1.5, p=2, q=2, L=1)
rep2 = equivalence_experiment(corpus[:3], ("lp", "diff"), outside, grid, "T2i")
print(f"same pair at s={outside.s} with L={outside.L} "
      f"(outside the window {rep2.hypothesis.window}):")
print(f"verdict: {rep2.verdict} -- the hypothesis fails, so no claim is made;")
print("the difference side diverges there by design, not by accident.")
