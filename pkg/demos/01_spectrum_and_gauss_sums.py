"""
Spectrum of the inversion walk
==============================

Each step flips every pair inside a uniformly random vertex subset.  The
characters of F2^m diagonalise the walk, and the eigenvalue at a graph A is
the normalised sum of (-1)^{edges of A inside X} over all subsets X.
"""

# %%
# Small case by hand
# ------------------
# For three vertices there are eight labels A.  Alternating forms have even
# rank, so every non-empty label has rank 2, yet the triangle alone gives a
# vanishing sum.

from collections import Counter

import numpy as np

from invwalk.spectral import GraphLabel, form_rank, full_spectrum, gauss_sum, spectral_gap

spec = full_spectrum(3)
for code in range(8):
    A = GraphLabel.from_int(3, code)
    print(f"A={A.edge_list()!s:<26} rank={spec.ranks[code]}  lambda={spec.eigenvalue(code)}")

# %%
# Whole spectrum from one transform
# ---------------------------------
# ``full_spectrum`` builds the multiplicity table of clique vectors and runs a
# single Walsh-Hadamard transform, so every S_A for n = 6 costs 2^15 log work.

spec6 = full_spectrum(6)
print("rank histogram, n=6:", spec6.rank_histogram())
print("distinct |S_A| with counts:", spec6.nontrivial_abs_sums())

# %%
# Rank controls the size of S_A
# -----------------------------
# |S_A| is either 0 or exactly 2^{n - r/2}.  Check it over the whole table.

limit = 2.0 ** (6 - spec6.ranks / 2)
nonzero = spec6.sums != 0
print("all nonzero sums saturate the bound:", bool(np.all(np.abs(spec6.sums[nonzero]) == limit[nonzero])))
print("fraction of labels with S_A = 0:", float(np.mean(~nonzero)))

# %%
# Larger n via symplectic reduction
# ---------------------------------
# Beyond exhaustive reach, S_A for a single label is still exact: the
# reduction peels off hyperbolic pairs instead of summing 2^n terms.

rng = np.random.default_rng(0)
n = 28
edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3]
A = GraphLabel.from_edges(n, edges)
s = gauss_sum(A, method="reduce")
print(f"n={n}, {len(edges)} edges, rank {form_rank(A)}, S_A = {s}")

# %%
# Spectral gap
# ------------

print({n: str(spectral_gap(n)) for n in range(2, 8)})
print(Counter(spec.eigenvalues().tolist()))
