import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_rank, brute_walsh
from invwalk.errors import InputError
from invwalk.gf2 import Gf2Matrix, Gf2Vector, batch_rank, kernel_basis, rank, solve, span_dim, walsh_hadamard


def test_vector_roundtrip_and_tail_bits():
    v = Gf2Vector.from_int((1 << 70) | 5, 71)
    assert v.to_int() == (1 << 70) | 5
    assert v.support() == [0, 2, 70]
    assert v.weight() == 3
    w = Gf2Vector(3, np.array([0xFF], dtype=np.uint64))
    assert w.to_int() == 0b111


def test_vector_addition_is_xor():
    v = Gf2Vector.from_bits([1, 0, 1, 1])
    assert v + v == Gf2Vector.zeros(4)
    assert (v + Gf2Vector.from_bits([0, 1, 1, 0])).to_bits().tolist() == [1, 1, 0, 1]
    with pytest.raises(InputError):
        v + Gf2Vector.zeros(5)


def test_vectors_are_hashable_and_immutable():
    v = Gf2Vector.from_int(6, 10)
    assert {v, Gf2Vector.from_int(6, 10)} == {v}
    with pytest.raises(AttributeError):
        v.length = 3
    with pytest.raises(ValueError):
        v.words[0] = 1


@pytest.mark.parametrize("n", [0, 1, 5, 64, 65])
def test_identity_rank(n):
    assert rank(Gf2Matrix.identity(n)) == n


def test_zero_rank():
    assert rank(Gf2Matrix.zeros(7, 9)) == 0


def test_triangle_adjacency_rank():
    tri = Gf2Matrix.from_dense([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert rank(tri) == 2
    assert brute_rank(tri.to_dense()) == 2


def test_rank_matches_brute_force(rng):
    for _ in range(40):
        r, c = rng.integers(1, 8, size=2)
        a = rng.integers(0, 2, size=(r, c))
        assert rank(Gf2Matrix.from_dense(a)) == brute_rank(a)


def test_rank_transpose_and_permutation_invariance(rng):
    for _ in range(20):
        a = rng.integers(0, 2, size=(20, 20))
        M = Gf2Matrix.from_dense(a)
        assert rank(M) == rank(M.transpose())
        p, q = rng.permutation(20), rng.permutation(20)
        assert rank(Gf2Matrix.from_dense(a[p][:, q])) == rank(M)


def test_rank_wide_packed_matrix(rng):
    a = rng.integers(0, 2, size=(30, 200))
    a[29] = a[0] ^ a[1]
    assert rank(Gf2Matrix.from_dense(a)) == rank(Gf2Matrix.from_dense(a.T))


def test_kernel_of_identity_and_zero():
    assert kernel_basis(Gf2Matrix.identity(6)) == []
    assert len(kernel_basis(Gf2Matrix.zeros(3, 5))) == 5
    assert len(kernel_basis(Gf2Matrix.zeros(0, 4))) == 4


def test_kernel_of_k4_incidence():
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    inc = np.zeros((4, 6), dtype=int)
    for p, (i, j) in enumerate(pairs):
        inc[i, p] = inc[j, p] = 1
    M = Gf2Matrix.from_dense(inc)
    basis = kernel_basis(M)
    assert len(basis) == 3
    assert all(not (M @ x) for x in basis)
    assert span_dim(basis) == 3


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(1, 80), st.integers(0, 2**32 - 1))
def test_rank_nullity(rows, cols, seed):
    a = np.random.default_rng(seed).integers(0, 2, size=(rows, cols))
    M = Gf2Matrix.from_dense(a)
    basis = kernel_basis(M)
    assert rank(M) + len(basis) == cols
    assert all(not (M @ x) for x in basis)
    assert span_dim(basis) == len(basis)


def test_kernel_is_deterministic(rng):
    a = rng.integers(0, 2, size=(5, 12))
    M = Gf2Matrix.from_dense(a)
    assert kernel_basis(M) == kernel_basis(Gf2Matrix.from_dense(a))


def test_span_dim():
    assert span_dim([]) == 0
    assert span_dim([Gf2Vector.from_indices(9, [i]) for i in range(9)]) == 9
    with pytest.raises(InputError):
        span_dim([Gf2Vector.zeros(3), Gf2Vector.zeros(4)])


def test_solve(rng):
    for _ in range(30):
        a = rng.integers(0, 2, size=(6, 9))
        M = Gf2Matrix.from_dense(a)
        x0 = Gf2Vector.from_bits(rng.integers(0, 2, size=9))
        b = M @ x0
        x = solve(M, b)
        assert x is not None and M @ x == b
    M = Gf2Matrix.from_dense([[1, 1], [1, 1]])
    assert solve(M, Gf2Vector.from_bits([1, 0])) is None


def test_batch_rank_agrees_with_single(rng):
    dense = rng.integers(0, 2, size=(50, 9, 9))
    rows = np.stack([Gf2Matrix.from_dense(d).data for d in dense])
    got = batch_rank(rows, 9)
    assert got.tolist() == [rank(Gf2Matrix.from_dense(d)) for d in dense]


def test_batch_rank_multiword(rng):
    dense = rng.integers(0, 2, size=(6, 70, 70))
    dense[:, 69] = dense[:, 0] ^ dense[:, 1]
    rows = np.stack([Gf2Matrix.from_dense(d).data for d in dense])
    assert batch_rank(rows, 70).tolist() == [rank(Gf2Matrix.from_dense(d)) for d in dense]


def test_walsh_delta_and_constant():
    delta = np.zeros(16, dtype=np.int64)
    delta[0] = 1
    assert walsh_hadamard(delta).tolist() == [1] * 16
    assert walsh_hadamard(np.ones(8, dtype=np.int64)).tolist() == [8, 0, 0, 0, 0, 0, 0, 0]


def test_walsh_matches_definition(rng):
    table = rng.integers(-50, 50, size=32)
    assert walsh_hadamard(table).tolist() == brute_walsh(table)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10), st.integers(0, 2**32 - 1))
def test_walsh_involution(m, seed):
    table = np.random.default_rng(seed).integers(-(10**6), 10**6, size=1 << m)
    twice = walsh_hadamard(walsh_hadamard(table))
    assert np.array_equal(twice, table * (1 << m))


def test_walsh_overflow_detected():
    table = np.full(4, 1 << 61, dtype=np.int64)
    with pytest.raises(OverflowError):
        walsh_hadamard(table)


def test_walsh_object_dtype_is_exact():
    table = np.array([3**40, 0, 0, 1], dtype=object)
    out = walsh_hadamard(table)
    assert out.tolist() == [3**40 + 1, 3**40 - 1, 3**40 - 1, 3**40 + 1]


def test_walsh_rejects_bad_length():
    with pytest.raises(InputError):
        walsh_hadamard(np.zeros(6))


def test_alternating_rank_even_exhaustive():
    for n in range(1, 6):
        iu = np.triu_indices(n, 1)
        for code in range(1 << len(iu[0])):
            a = np.zeros((n, n), dtype=int)
            a[iu] = [(code >> p) & 1 for p in range(len(iu[0]))]
            assert rank(Gf2Matrix.from_dense(a + a.T)) % 2 == 0


def test_alternating_rank_even_random(rng):
    for n in rng.integers(2, 65, size=40):
        a = np.triu(rng.integers(0, 2, size=(n, n)), 1)
        assert rank(Gf2Matrix.from_dense(a + a.T)) % 2 == 0
