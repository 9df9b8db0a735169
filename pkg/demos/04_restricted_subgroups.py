"""
Restricting to k-subsets
========================

Flipping only k-cliques confines the walk to the span H_k of the k-clique
vectors.  Two parity functionals, vertex degrees and total edge count, pin
that span down depending on k mod 4.
"""

# %%
# Which functionals vanish on k-cliques?

from math import comb

from invwalk.encoding import clique_vector
from invwalk.restricted import (
    boundary_dims,
    co_vertex_relations,
    hk_dimension,
    parity_fingerprint,
    restricted_eigenvalue,
    verify_hk_equals_vk,
    wilson_rank,
)
from invwalk.spectral import GraphLabel

n = 9
for k in range(2, 8):
    fp = parity_fingerprint(clique_vector(n, range(k)), n)
    print(f"k={k} (mod 4 = {k % 4}): degree parities {fp.degree_parity.to_bits().tolist()}, edge parity {fp.edge_parity}")

# %%
# Three routes to dim H_k
# -----------------------

for k in range(2, n - 1):
    report = verify_hk_equals_vk(n, k, membership=20)
    print(k, wilson_rank(n, k), hk_dimension(n, k), report.vk_dim, report.passed, f"of m={comb(n, 2)}")

# %%
# Edge cases
# ----------
# With k = n - 1 and n even, the n co-vertex cliques satisfy one relation.

for n in range(4, 10):
    print(n, boundary_dims(n, n - 1), [bin(s) for s in co_vertex_relations(n)])

# %%
# Eigenvalues of the restricted walk
# ----------------------------------

A = GraphLabel.from_edges(6, [(0, 1), (2, 3)])
print([str(restricted_eigenvalue(A, k)) for k in range(7)])
