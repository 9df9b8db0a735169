"""
Subgroup structure of the k-restricted inversion walk.

H_k is spanned by the clique vectors v_X with |X| = k, i.e. by the columns of
the pair-vs-k-subset inclusion matrix.  For n >= 4 and 2 <= k <= n-2 it is
cut out by the degree-parity map and/or the edge-count parity depending on
k mod 4; this module checks that from three directions (closed form, Wilson's
rank formula, elimination).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .encoding import clique_code, edge_index, num_pairs
from .errors import CapacityError, InputError, VerificationError
from .gf2 import Gf2Matrix, Gf2Vector, kernel_basis, rank, solve, span_dim
from .spectral import GraphLabel

MAX_INCLUSION_BITS = 1 << 26


def k_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of range(n) in colexicographic order."""
    return sorted(combinations(range(n), k), key=lambda c: c[::-1])


def _check_nk(n: int, k: int) -> None:
    if n < 0 or not 0 <= k <= n:
        raise InputError(f"need 0 <= k <= n, got n={n}, k={k}")


@dataclass(frozen=True)
class InclusionMatrix:
    n: int
    k: int
    subsets: list[tuple[int, ...]]
    matrix: Gf2Matrix


def inclusion_matrix(n: int, k: int) -> InclusionMatrix:
    """W_{2,k}(n): rows are pairs (lex order), columns k-subsets (colex order)."""
    _check_nk(n, k)
    m = num_pairs(n)
    cols = comb(n, k)
    if m * cols > MAX_INCLUSION_BITS:
        raise CapacityError(f"inclusion matrix {m} x {cols} exceeds {MAX_INCLUSION_BITS} bits")
    subsets = k_subsets(n, k)
    dense = np.zeros((m, cols), dtype=np.uint8)
    pos = edge_index(n).position
    for c, X in enumerate(subsets):
        for i, j in combinations(X, 2):
            dense[pos(i, j), c] = 1
    return InclusionMatrix(n, k, subsets, Gf2Matrix.from_dense(dense))


def _check_core_range(n: int, k: int) -> None:
    if n < 4 or not 2 <= k <= n - 2:
        raise InputError(
            f"(n={n}, k={k}) is outside n >= 4, 2 <= k <= n-2; use boundary_dims for k in {{0, 1, n-1, n}}"
        )


def wilson_rank(n: int, k: int) -> int:
    """GF(2) rank of W_{2,k}(n) from Wilson's diagonal form."""
    _check_core_range(n, k)
    total = 0
    for j in range(3):
        if comb(k - j, 2 - j) % 2:
            total += comb(n, j) - (comb(n, j - 1) if j else 0)
    return total


def hk_dimension(n: int, k: int) -> int:
    """dim H_k by elimination on the inclusion matrix."""
    return rank(inclusion_matrix(n, k).matrix)


@dataclass(frozen=True)
class ParityFingerprint:
    degree_parity: Gf2Vector
    edge_parity: int

    def __add__(self, other: ParityFingerprint) -> ParityFingerprint:
        return ParityFingerprint(self.degree_parity + other.degree_parity, self.edge_parity ^ other.edge_parity)


def degree_parity_matrix(n: int) -> Gf2Matrix:
    """The n x m vertex-pair incidence matrix over GF(2)."""
    idx = edge_index(n)
    dense = np.zeros((n, idx.m), dtype=np.uint8)
    for p, (i, j) in enumerate(idx.pairs):
        dense[i, p] = dense[j, p] = 1
    return Gf2Matrix.from_dense(dense)


def parity_fingerprint(F: Gf2Vector, n: int) -> ParityFingerprint:
    """(degree parities, edge-count parity) of an edge set."""
    if F.length != num_pairs(n):
        raise InputError(f"edge set length {F.length} != m={num_pairs(n)}")
    return ParityFingerprint(degree_parity_matrix(n) @ F, F.weight() & 1)


def vk_constraints(n: int, k: int) -> Gf2Matrix:
    """Rows of the linear functionals whose common kernel is V_k."""
    m = num_pairs(n)
    rows = []
    if k % 2 == 1:
        rows.append(degree_parity_matrix(n).to_dense())
    if k % 4 in (0, 1):
        rows.append(np.ones((1, m), dtype=np.uint8))
    if not rows:
        return Gf2Matrix.zeros(0, m)
    return Gf2Matrix.from_dense(np.concatenate(rows))


def vk_closed_form(n: int, k: int) -> int:
    m = num_pairs(n)
    return {2: m, 3: m - n + 1, 0: m - 1, 1: m - n}[k % 4]


def vk_dimension(n: int, k: int) -> int:
    """dim V_k, by closed form and by a kernel computation; they must agree."""
    _check_core_range(n, k)
    closed = vk_closed_form(n, k)
    kernel = len(kernel_basis(vk_constraints(n, k)))
    if kernel != closed:
        raise VerificationError(f"(n={n}, k={k}): dim V_k closed form {closed} != kernel dimension {kernel}")
    return closed


@dataclass
class HkReport:
    n: int
    k: int
    wilson_rank: int | None = None
    elimination_rank: int | None = None
    vk_dim: int | None = None
    generators_in_vk: bool | None = None
    membership_checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def k_mod_4(self) -> int:
        return self.k % 4

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "k_mod_4": self.k_mod_4,
            "wilson_rank": self.wilson_rank,
            "elimination_rank": self.elimination_rank,
            "vk_dim": self.vk_dim,
            "generators_in_vk": self.generators_in_vk,
            "membership_checked": self.membership_checked,
            "pass": self.passed,
            "failures": list(self.failures),
        }


def verify_hk_equals_vk(n: int, k: int, membership: int = 100, seed: int = 0) -> HkReport:
    """Check H_k = V_k: generator parities, three-way dimension match, random membership."""
    _check_core_range(n, k)
    report = HkReport(n, k)
    inc = inclusion_matrix(n, k)
    W = inc.matrix
    C = vk_constraints(n, k)
    m = num_pairs(n)

    gens = (Gf2Vector.from_int(clique_code(n, X), m) for X in inc.subsets)
    bad = [v for v in gens if C.rows and (C @ v)]
    report.generators_in_vk = not bad
    if bad:
        report.failures.append(f"(n={n}, k={k}): {len(bad)} generators violate the parity constraints of V_k")

    report.wilson_rank = wilson_rank(n, k)
    report.elimination_rank = rank(W)
    try:
        report.vk_dim = vk_dimension(n, k)
    except VerificationError as exc:
        report.failures.append(str(exc))
    if not report.wilson_rank == report.elimination_rank == report.vk_dim:
        report.failures.append(
            f"(n={n}, k={k}): wilson={report.wilson_rank}, elimination={report.elimination_rank}, dim V_k={report.vk_dim}"
        )

    if membership:
        basis = kernel_basis(C)
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(n, k))))
        for _ in range(membership):
            coeffs = rng.integers(0, 2, size=len(basis))
            v = Gf2Vector.zeros(m)
            for c, b in zip(coeffs, basis):
                if c:
                    v = v + b
            x = solve(W, v)
            if x is None or W @ x != v:
                report.failures.append(f"(n={n}, k={k}): a sampled element of V_k is not in the column span")
                break
            report.membership_checked += 1
    return report


def boundary_dims(n: int, k: int) -> int:
    """dim H_k for k in {0, 1, n-1, n}, cross-checked against the generators' span."""
    if n < 0 or k not in {0, 1, n - 1, n} or k < 0:
        raise InputError(f"boundary_dims takes k in {{0, 1, n-1, n}}; got n={n}, k={k}")
    if k <= 1:
        closed = 0
    elif k == n:
        closed = 1
    else:
        closed = n if n % 2 else n - 1
    gens = [Gf2Vector.from_int(clique_code(n, X), num_pairs(n)) for X in combinations(range(n), k)]
    direct = span_dim(gens)
    if direct != closed:
        raise VerificationError(f"(n={n}, k={k}): boundary formula {closed} != span dimension {direct}")
    return closed


def co_vertex_relations(n: int) -> list[int]:
    """Non-empty S (as bitmasks over [n]) with sum_{i in S} v_{[n] minus i} = 0, by exhaustion."""
    if n > 20:
        raise CapacityError(f"exhaustive relation search needs n <= 20, got n={n}")
    full = (1 << n) - 1
    gens = [clique_code(n, full & ~(1 << i)) for i in range(n)]
    found = []
    acc = 0
    prev_gray = 0
    for step in range(1, 1 << n):
        gray = step ^ (step >> 1)
        flipped = (gray ^ prev_gray).bit_length() - 1
        acc ^= gens[flipped]
        prev_gray = gray
        if acc == 0:
            found.append(gray)
    return sorted(found)


def restricted_eigenvalue(A: GraphLabel, k: int) -> Fraction:
    """Average of (-1)^{#edges of A inside X} over all k-subsets X."""
    n = A.n
    _check_nk(n, k)
    total = comb(n, k)
    if total > 1 << 22:
        raise CapacityError(f"C({n}, {k}) = {total} subsets is too many to enumerate")
    code = A.code
    odd = sum(bin(code & clique_code(n, X)).count("1") & 1 for X in combinations(range(n), k))
    return Fraction(total - 2 * odd, total)
