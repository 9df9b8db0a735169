import itertools
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from invwalk.encoding import clique_code, clique_vector, edge_index, num_pairs
from invwalk.errors import InputError
from invwalk.gf2 import Gf2Matrix, Gf2Vector, kernel_basis, rank
from invwalk.restricted import (
    boundary_dims,
    co_vertex_relations,
    degree_parity_matrix,
    hk_dimension,
    inclusion_matrix,
    k_subsets,
    parity_fingerprint,
    restricted_eigenvalue,
    verify_hk_equals_vk,
    vk_constraints,
    vk_dimension,
    wilson_rank,
)
from invwalk.spectral import GraphLabel

CORE_RANGE = [(n, k) for n in range(4, 11) for k in range(2, n - 1)]


def test_colex_order():
    assert k_subsets(4, 2) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]


def test_inclusion_matrix_shapes():
    assert inclusion_matrix(4, 2).matrix.to_dense().sum(axis=0).tolist() == [1] * 6
    assert rank(inclusion_matrix(4, 2).matrix) == 6
    full = inclusion_matrix(4, 4).matrix.to_dense()
    assert full.shape == (6, 1) and full.all()
    W = inclusion_matrix(5, 3).matrix.to_dense()
    assert W.shape == (10, 10)
    assert (W.sum(axis=0) == 3).all() and (W.sum(axis=1) == 3).all()


def test_inclusion_columns_are_clique_vectors():
    inc = inclusion_matrix(6, 3)
    for c, X in enumerate(inc.subsets):
        assert inc.matrix.column(c) == clique_vector(6, X)


@pytest.mark.parametrize("n,k", [(7, 3), (8, 4), (9, 6)])
def test_inclusion_row_weights(n, k):
    W = inclusion_matrix(n, k).matrix.to_dense()
    assert (W.sum(axis=0) == comb(k, 2)).all()
    assert (W.sum(axis=1) == comb(n - 2, k - 2)).all()


def test_wilson_examples():
    assert wilson_rank(6, 3) == 10
    assert wilson_rank(6, 4) == 14
    assert wilson_rank(7, 2) == 21
    with pytest.raises(InputError, match="boundary_dims"):
        wilson_rank(6, 5)


@pytest.mark.parametrize("n,k", CORE_RANGE)
def test_wilson_equals_elimination(n, k):
    assert wilson_rank(n, k) == hk_dimension(n, k)


def test_hk_dimension_examples():
    assert hk_dimension(6, 3) == 10
    assert hk_dimension(6, 5) == boundary_dims(6, 5) == 5
    assert hk_dimension(4, 2) == 6


def test_fingerprint_examples():
    n = 7
    for X in [(0, 2, 5), (1, 2, 3, 6), (0, 1, 2, 3, 4)]:
        k = len(X)
        fp = parity_fingerprint(clique_vector(n, X), n)
        expected = Gf2Vector.from_indices(n, X if (k - 1) % 2 else [])
        assert fp.degree_parity == expected
        assert fp.edge_parity == comb(k, 2) % 2
    tri = parity_fingerprint(clique_vector(5, [0, 1, 2]), 5)
    assert not tri.degree_parity and tri.edge_parity == 1
    zero = parity_fingerprint(Gf2Vector.zeros(10), 5)
    assert not zero.degree_parity and zero.edge_parity == 0


def test_fingerprint_linear(rng):
    n = 8
    for _ in range(50):
        F, G = (Gf2Vector.from_int(int(v), 28) for v in rng.integers(0, 1 << 28, size=2))
        assert parity_fingerprint(F + G, n) == parity_fingerprint(F, n) + parity_fingerprint(G, n)


def test_fingerprint_degree_by_counting(rng):
    n = 6
    idx = edge_index(n)
    for _ in range(30):
        F = Gf2Vector.from_int(int(rng.integers(0, 1 << 15)), 15)
        deg = [0] * n
        for p in F.support():
            for v in idx.pair(p):
                deg[v] += 1
        assert parity_fingerprint(F, n).degree_parity.to_bits().tolist() == [d % 2 for d in deg]


def test_vk_examples():
    assert vk_dimension(6, 2) == 15
    assert vk_dimension(6, 3) == 10
    assert vk_dimension(6, 4) == 14
    assert vk_dimension(7, 4) == 20


@pytest.mark.parametrize("n", range(4, 11))
def test_parity_kernel_dimensions(n):
    m = num_pairs(n)
    D = degree_parity_matrix(n)
    assert len(kernel_basis(D)) == m - n + 1
    assert len(kernel_basis(Gf2Matrix.from_dense(np.ones((1, m), dtype=int)))) == m - 1
    both = Gf2Matrix.from_dense(np.vstack([D.to_dense(), np.ones((1, m), dtype=int)]))
    assert len(kernel_basis(both)) == m - n


@pytest.mark.parametrize("n,k", CORE_RANGE)
def test_generator_obstruction_pattern(n, k):
    fps = [parity_fingerprint(clique_vector(n, X), n) for X in itertools.combinations(range(n), k)]
    degree_vanishes = all(not fp.degree_parity for fp in fps)
    edge_vanishes = all(fp.edge_parity == 0 for fp in fps)
    assert degree_vanishes == (k % 2 == 1)
    assert edge_vanishes == (k % 4 in (0, 1))


def test_verify_examples():
    r = verify_hk_equals_vk(6, 3)
    assert r.passed and r.wilson_rank == 10 and r.membership_checked == 100
    W = inclusion_matrix(8, 4)
    fps = [parity_fingerprint(clique_vector(8, X), 8) for X in W.subsets]
    assert all(fp.edge_parity == 0 for fp in fps)
    assert any(fp.degree_parity for fp in fps)


def test_verify_reports_failure_structurally(monkeypatch):
    import invwalk.restricted as R

    monkeypatch.setattr(R, "wilson_rank", lambda n, k: -1)
    report = R.verify_hk_equals_vk(6, 3, membership=0)
    assert not report.passed
    assert "(n=6, k=3)" in report.failures[0]
    assert report.as_dict()["pass"] is False


def test_boundary_dims_examples():
    assert boundary_dims(7, 0) == 0 and boundary_dims(7, 1) == 0
    assert boundary_dims(7, 7) == 1
    assert boundary_dims(6, 5) == 5
    assert boundary_dims(7, 6) == 7
    full_sum = 0
    for i in range(6):
        full_sum ^= clique_code(6, [v for v in range(6) if v != i])
    assert full_sum == 0
    with pytest.raises(InputError):
        boundary_dims(7, 3)


@pytest.mark.parametrize("n", range(2, 13))
def test_boundary_dims_all_n(n):
    for k in sorted({0, 1, n - 1, n}):
        boundary_dims(n, k)


@pytest.mark.parametrize("n", range(3, 11))
def test_co_vertex_relations(n):
    assert co_vertex_relations(n) == ([(1 << n) - 1] if n % 2 == 0 else [])


def test_restricted_eigenvalue_examples():
    assert restricted_eigenvalue(GraphLabel.from_int(5, 0), 3) == 1
    single = GraphLabel.from_edges(4, [(0, 1)])
    assert restricted_eigenvalue(single, 2) == Fraction(2, 3)
    assert restricted_eigenvalue(single, 4) == -1


def test_restricted_eigenvalue_is_one_on_annihilator():
    for n, k in [(5, 3), (6, 4), (6, 3), (7, 4)]:
        m = num_pairs(n)
        C = vk_constraints(n, k)
        # A annihilates H_k = V_k exactly when A lies in the row space of the constraints
        rows = [C.row(i) for i in range(C.rows)]
        for coeffs in itertools.product((0, 1), repeat=len(rows)):
            A = Gf2Vector.zeros(m)
            for c, r in zip(coeffs, rows):
                if c:
                    A = A + r
            assert restricted_eigenvalue(GraphLabel(n, A), k) == 1


def test_restricted_eigenvalue_matches_full_walk_average():
    # averaging the k-restricted eigenvalues with binomial weights recovers lambda_A
    from invwalk.spectral import eigenvalue_exact

    n = 5
    for code in [0, 1, 7, 100, 1023, 513]:
        A = GraphLabel.from_int(n, code)
        mix = sum(comb(n, k) * restricted_eigenvalue(A, k) for k in range(n + 1)) / 2**n
        assert mix == eigenvalue_exact(A)
