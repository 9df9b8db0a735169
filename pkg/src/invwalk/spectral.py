"""
Exact eigenvalues and total-variation distances of the inversion walk.

The character indexed by a graph A (a vector of F_2^m) has eigenvalue

    lambda_A = 2^-n * S_A,    S_A = sum_x (-1)^{q_A(x)},

where q_A(x) counts, mod 2, the edges of A inside the subset with indicator x.
S_A is the stored primitive everywhere; floats only appear when a bound or a
distance is evaluated.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .encoding import clique_codes, edge_index, num_pairs
from .errors import CapacityError, InputError, VerificationError
from .gf2 import Gf2Matrix, Gf2Vector, batch_rank, rank, walsh_hadamard

MAX_SPECTRUM_N = 7
MAX_EXACT_RATIONAL_N = 4
MAX_EIGENVALUE_N = 30
MAX_ENUMERATE_N = 24
NEGATIVE_MASS_EPS = 1e-12


@dataclass(frozen=True)
class GraphLabel:
    """A graph on vertices 0..n-1, i.e. a character index A in F_2^m."""

    n: int
    edges: Gf2Vector

    def __post_init__(self):
        if self.edges.length != num_pairs(self.n):
            raise InputError(f"edge vector length {self.edges.length} != m={num_pairs(self.n)}")

    @classmethod
    def from_edges(cls, n: int, edges) -> GraphLabel:
        idx = edge_index(n)
        return cls(n, Gf2Vector.from_indices(idx.m, [idx.position(i, j) for i, j in edges]))

    @classmethod
    def from_int(cls, n: int, code: int) -> GraphLabel:
        return cls(n, Gf2Vector.from_int(code, num_pairs(n)))

    @property
    def code(self) -> int:
        return self.edges.to_int()

    def edge_list(self) -> list[tuple[int, int]]:
        pairs = edge_index(self.n).pairs
        return [pairs[p] for p in self.edges.support()]

    def adjacency_masks(self) -> list[int]:
        adj = [0] * self.n
        for i, j in self.edge_list():
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return adj


def quad_form_eval(A: GraphLabel, x: Gf2Vector) -> int:
    """q_A(x): parity of the number of edges of A with both ends in supp(x)."""
    if x.length != A.n:
        raise InputError(f"x has length {x.length}, graph has n={A.n}")
    bits = x.to_bits()
    return sum(int(bits[i] & bits[j]) for i, j in A.edge_list()) & 1


def polarisation_matrix(A: GraphLabel) -> Gf2Matrix:
    """B(x, y) = q(x+y) + q(x) + q(y) + q(0); for q_A this is the adjacency matrix of A."""
    return Gf2Matrix.from_int_rows(A.adjacency_masks(), A.n)


def form_rank(A: GraphLabel) -> int:
    """r(A), the rank of the polarisation; always even."""
    return rank(polarisation_matrix(A))


def gauss_sum_enumerate(A: GraphLabel) -> int:
    """S_A by brute force over all 2^n inputs."""
    n = A.n
    if n > MAX_ENUMERATE_N:
        raise CapacityError(f"enumeration needs n <= {MAX_ENUMERATE_N}, got n={n}")
    edges = A.edge_list()
    total = 0
    chunk = 1 << min(n, 20)
    for start in range(0, 1 << n, chunk):
        xs = np.arange(start, start + chunk, dtype=np.uint32)
        parity = np.zeros(chunk, dtype=np.uint32)
        for i, j in edges:
            parity ^= (xs >> i) & (xs >> j) & 1
        total += chunk - 2 * int(parity.sum())
    return total


def gauss_sum_reduce(n: int, adj: list[int], linear: int = 0, const: int = 0) -> int:
    """sum_x (-1)^{q(x)} for q = sum_{edges} x_i x_j + <linear, x> + const.

    Splits off one hyperbolic pair at a time: with x_i x_j a term of q,
    q = (x_i + b)(x_j + a) + a*b + rest, and the inner sum over (x_i, x_j)
    is 2 for every assignment of the other variables.
    """
    adj = list(adj)
    alive = (1 << n) - 1
    log2 = 0
    while alive:
        i = (alive & -alive).bit_length() - 1
        nbrs = adj[i] & alive
        if not nbrs:
            if (linear >> i) & 1:
                return 0
            log2 += 1
            alive &= ~(1 << i)
            continue
        j = (nbrs & -nbrs).bit_length() - 1
        alive &= ~((1 << i) | (1 << j))
        a_mask = adj[i] & alive
        b_mask = adj[j] & alive
        a0 = (linear >> i) & 1
        b0 = (linear >> j) & 1
        rest = alive
        while rest:
            k = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            ak = (a_mask >> k) & 1
            bk = (b_mask >> k) & 1
            if ak:
                adj[k] ^= b_mask
            if bk:
                adj[k] ^= a_mask
            if ak and bk:
                linear ^= 1 << k
        if a0:
            linear ^= b_mask
        if b0:
            linear ^= a_mask
        const ^= a0 & b0
        log2 += 1
    return -(1 << log2) if const else 1 << log2


def gauss_sum(A: GraphLabel, method: str = "auto") -> int:
    if method == "auto":
        method = "enumerate" if A.n <= 16 else "reduce"
    if method == "enumerate":
        return gauss_sum_enumerate(A)
    if method == "reduce":
        return gauss_sum_reduce(A.n, A.adjacency_masks())
    raise InputError(f"unknown method {method!r}")


def eigenvalue_exact(A: GraphLabel, method: str = "auto") -> Fraction:
    """lambda_A as an exact dyadic rational."""
    if A.n > MAX_EIGENVALUE_N:
        raise CapacityError(f"eigenvalue_exact supports n <= {MAX_EIGENVALUE_N}, got n={A.n}")
    return Fraction(gauss_sum(A, method), 1 << A.n)


def adjacency_rows(n: int, codes: np.ndarray) -> np.ndarray:
    """Packed adjacency rows, shape (len(codes), n), for graphs given by integer codes."""
    codes = np.asarray(codes, dtype=np.uint64)
    rows = np.zeros((codes.shape[0], n), dtype=np.uint64)
    one = np.uint64(1)
    for p, (i, j) in enumerate(edge_index(n).pairs):
        bit = (codes >> np.uint64(p)) & one
        rows[:, i] |= bit << np.uint64(j)
        rows[:, j] |= bit << np.uint64(i)
    return rows


def _check_spectrum_n(n: int, limit: int = MAX_SPECTRUM_N) -> None:
    if n < 1:
        raise InputError(f"n must be at least 1, got {n}")
    if n > limit:
        raise CapacityError(f"exhaustive spectrum needs n <= {limit} (2^{num_pairs(limit)} graphs); got n={n}")


@dataclass(frozen=True)
class SpectrumTable:
    """S_A and r(A) for every A, indexed by the integer code of A."""

    n: int
    sums: np.ndarray
    ranks: np.ndarray

    @property
    def m(self) -> int:
        return num_pairs(self.n)

    def eigenvalue(self, code: int) -> Fraction:
        return Fraction(int(self.sums[code]), 1 << self.n)

    def eigenvalues(self) -> np.ndarray:
        return self.sums / float(1 << self.n)

    def eigenvalue_multiset(self) -> Counter:
        values, counts = np.unique(self.sums, return_counts=True)
        return Counter({Fraction(int(v), 1 << self.n): int(c) for v, c in zip(values, counts)})

    def rank_histogram(self) -> dict[int, int]:
        values, counts = np.unique(self.ranks, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    def nontrivial_abs_sums(self) -> dict[int, int]:
        """Multiplicities of |S_A| over A != 0."""
        values, counts = np.unique(np.abs(self.sums[1:]), return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}


def _rank_chunk(n: int, start: int, stop: int) -> np.ndarray:
    codes = np.arange(start, stop, dtype=np.uint64)
    return batch_rank(adjacency_rows(n, codes), n)


@lru_cache(maxsize=None)
def full_spectrum(n: int, threads: int = 1) -> SpectrumTable:
    """S_A for all 2^m graphs from one Walsh-Hadamard transform, with ranks.

    The multiplicity table f(z) = #{X : v_X = z} transforms to
    sum_X (-1)^{<A, v_X>} = S_A.  A handful of entries are re-derived by
    symplectic reduction as a guard.
    """
    _check_spectrum_n(n)
    m = num_pairs(n)
    size = 1 << m
    counts = np.bincount(clique_codes(n).astype(np.int64), minlength=size)
    sums = walsh_hadamard(counts)

    chunk = 1 << 16
    bounds = [(s, min(s + chunk, size)) for s in range(0, size, chunk)]
    if threads > 1 and len(bounds) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _rank_chunk(n, *b), bounds))
    else:
        parts = [_rank_chunk(n, *b) for b in bounds]
    ranks = np.concatenate(parts).astype(np.int8)

    probes = sorted({0, size - 1, 1, size // 3, (2 * size) // 3, size // 2 + 1} & set(range(size)))
    for code in probes:
        A = GraphLabel.from_int(n, code)
        direct = gauss_sum_reduce(n, A.adjacency_masks())
        if direct != int(sums[code]):
            raise VerificationError(f"n={n}, A={code:#x}: transform S_A={int(sums[code])}, reduction {direct}")

    sums.flags.writeable = False
    ranks.flags.writeable = False
    return SpectrumTable(n, sums, ranks)


def _log2_sum_exp2(log2_terms: list[float]) -> float:
    if not log2_terms:
        return -math.inf
    top = max(log2_terms)
    if top == -math.inf:
        return top
    return top + math.log2(math.fsum(2.0 ** (v - top) for v in log2_terms))


def l2_tv_upper(spectrum: SpectrumTable, t: int) -> float:
    """1/2 * sqrt(sum_{A != 0} lambda_A^{2t}), accumulated in the log domain."""
    if t < 0:
        raise InputError(f"time must be non-negative, got {t}")
    n = spectrum.n
    terms = []
    for s, count in spectrum.nontrivial_abs_sums().items():
        if s == 0:
            if t == 0:
                terms.append(math.log2(count))
            continue
        terms.append(math.log2(count) + 2 * t * (math.log2(s) - n))
    log2_total = _log2_sum_exp2(terms)
    if log2_total == -math.inf:
        return 0.0
    return 0.5 * 2.0 ** (0.5 * log2_total)


def _check_time(t: int) -> None:
    if t < 1:
        raise InputError(
            f"exact TV needs t >= 1 (t={t}); at t=0 the law is a point mass "
            "and the Fourier expansion needs the 0^0 = 1 convention"
        )


def deviation_from_uniform(n: int, t: int) -> np.ndarray:
    """mu_t - pi over all 2^m codes, started from the reference tournament."""
    _check_time(t)
    spec = full_spectrum(n)
    lam_t = spec.eigenvalues() ** t
    lam_t[0] = 0.0
    dev = walsh_hadamard(lam_t) / float(1 << spec.m)
    if (dev + 1.0 / (1 << spec.m)).min() < -NEGATIVE_MASS_EPS:
        raise VerificationError(f"n={n}, t={t}: Fourier route produced negative probability mass")
    return dev


def time_distribution(n: int, t: int) -> np.ndarray:
    """mu_t as floats by the Fourier route."""
    return deviation_from_uniform(n, t) + 1.0 / (1 << num_pairs(n))


def exact_tv(n: int, t: int) -> float:
    """d_n(t) = 1/2 sum_z |mu_t(z) - 2^-m| via the inverse transform of lambda^t."""
    dev = deviation_from_uniform(n, t)
    return 0.5 * math.fsum(np.abs(dev).tolist())


def exact_tv_fraction(n: int, t: int) -> Fraction:
    """d_n(t) as an exact rational (n <= 4)."""
    _check_time(t)
    _check_spectrum_n(n, MAX_EXACT_RATIONAL_N)
    spec = full_spectrum(n)
    m = spec.m
    powered = np.array([int(s) ** t for s in spec.sums], dtype=object)
    numer = walsh_hadamard(powered)
    scale = 1 << (n * t)
    total = sum(abs(int(v) - scale) for v in numer)
    return Fraction(total, 2 * (1 << m) * scale)


def _c0_terms():
    r = 2
    while True:
        yield r, Fraction(1, 1 << (r * (r - 1) // 2))
        r += 2


def uppertail_c0(tol_log2: int = 80) -> float:
    """C_0 = sum over even r >= 2 of 2^{-r(r-1)/2}, summed until terms drop below 2^-tol_log2."""
    total = Fraction(0)
    for r, term in _c0_terms():
        if r * (r - 1) // 2 > tol_log2:
            break
        total += term
    return float(total)


def uppertail_constant() -> float:
    """C = sqrt(C_0) / 2."""
    return 0.5 * math.sqrt(uppertail_c0())


def uppertail_bound(c: int) -> float:
    """C * 2^-c, an upper bound on d_n(n + c) valid for every n."""
    if c < 0:
        raise InputError(f"offset c must be non-negative, got {c}")
    return math.ldexp(uppertail_constant(), -c)


PRECUTOFF_LIMIT = Fraction(2252, 1000)
PRECUTOFF_ALPHA = 0.751


def precutoff_estimate(n: int) -> Fraction:
    """sum over even 2 <= r <= n of 2^{r(n-r)+r+r(r-1)/2} * 2^{-2r(n-1)/2} = sum 2^{-r(r-3)/2}."""
    if n < 0:
        raise InputError(f"n must be non-negative, got {n}")
    total = Fraction(0)
    for r in range(2, n + 1, 2):
        e = r * (n - r) + r + r * (r - 1) // 2 - r * (n - 1)
        total += Fraction(2) ** e
    return total


def precutoff_series(terms: int = 12) -> Fraction:
    """Partial sum of the n-independent series sum_{r even >= 2} 2^{-r(r-3)/2}."""
    return sum((Fraction(2) ** (-(r * (r - 3) // 2)) for r in range(2, 2 * terms + 1, 2)), Fraction(0))


@dataclass(frozen=True)
class PreCutoffSum:
    n: int
    exact: Fraction | None
    estimate: Fraction
    alpha: float

    @property
    def exact_tv_bound(self) -> float | None:
        return None if self.exact is None else 0.5 * math.sqrt(self.exact)


def pre_cutoff_l2_sum(n: int) -> PreCutoffSum:
    """The L^2 sum at t = n - 1, exactly (n <= 7) and by the rank-grouped estimate."""
    if n < 1:
        raise InputError(f"n must be at least 1, got {n}")
    estimate = precutoff_estimate(n)
    alpha = 0.5 * math.sqrt(estimate)
    if not (estimate < PRECUTOFF_LIMIT and alpha < PRECUTOFF_ALPHA):
        raise VerificationError(f"n={n}: rank-grouped estimate {float(estimate)} breaks the pre-cutoff bound")
    exact = None
    if n <= MAX_SPECTRUM_N:
        spec = full_spectrum(n)
        t = n - 1
        exact = sum(
            (Fraction(c * s ** (2 * t), 1 << (2 * n * t)) for s, c in spec.nontrivial_abs_sums().items() if s),
            Fraction(0),
        )
        if t == 0:
            exact = Fraction(sum(spec.nontrivial_abs_sums().values()))
        if exact > estimate:
            raise VerificationError(f"n={n}: exact sum {float(exact)} exceeds estimate {float(estimate)}")
    return PreCutoffSum(n, exact, estimate, alpha)


def spectral_gap(n: int) -> Fraction:
    """1 - max_{A != 0} |lambda_A|."""
    _check_spectrum_n(n)
    if n < 2:
        raise InputError("the walk on one vertex has a trivial state space")
    spec = full_spectrum(n)
    return 1 - Fraction(int(np.abs(spec.sums[1:]).max()), 1 << n)
