"""
Rank tails and inversion balls
==============================

Few tournaments are reachable in fewer than n inversions.  The counting runs
through ranks of symmetric matrices over GF(2): those of low rank are rare.
"""

# %%
# Exhaustive census of alternating forms
# --------------------------------------

from invwalk.encoding import ball_sizes, num_pairs
from invwalk.rank_stats import alt_count_bound, alternating_census, ball_volume_bound, lowertail_bound, sample_symmetric_rank_tail

for n in range(2, 7):
    census = alternating_census(n)
    print(n, census.counts, [alt_count_bound(n, r) for r in sorted(census.counts)])

# %%
# Monte Carlo rank tail
# ---------------------
# One seeded batch of symmetric 24 x 24 matrices gives the whole tail at once.

est = sample_symmetric_rank_tail(24, 20000, seed=5)
for row in est.rows[:9]:
    print(f"s={row.s}  P(rank <= n-s) ~ {row.estimate:.4f}  [{row.ci_low:.4f}, {row.ci_high:.4f}]  bound {float(row.bound):.3g}")

# %%
# Ball volumes
# ------------
# Exact BFS sizes against the volume bound at t = n - s.

for n in range(3, 6):
    sizes = ball_sizes(n)
    bounds = [float(ball_volume_bound(n, n - t)) for t in range(min(n, len(sizes) - 1) + 1)]
    print(n, 2 ** num_pairs(n), sizes, bounds)

# %%
# When does the lower bound bite?
# -------------------------------

for n in (50, 100, 200):
    s = next(s for s in range(n + 1) if lowertail_bound(n, s) > 0.5)
    print(f"n={n}: d_n(n - {s}) >= {float(lowertail_bound(n, s)):.4f}")
