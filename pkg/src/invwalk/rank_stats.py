"""
Rank statistics of alternating and random symmetric matrices over GF(2),
and the exact rational bounds built from them.

Bounds never touch floating point: 2^{s log2 n} is written as n^s.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.stats import binomtest

from .encoding import num_pairs
from .errors import CapacityError, InputError
from .gf2 import _pack_bits, batch_rank

MAX_CENSUS_N = 7
LONG_CENSUS_N = 8
MAX_SAMPLE_N = 512
SAMPLE_BATCH = 4096


@dataclass(frozen=True)
class RankCensus:
    n: int
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def _census_chunk(n: int, start: int, stop: int) -> np.ndarray:
    # upper-triangular bits filled row by row: bit p <-> the p-th (i, j), i < j
    codes = np.arange(start, stop, dtype=np.uint64)
    rows = np.zeros((codes.shape[0], n), dtype=np.uint64)
    p = 0
    for i in range(n):
        for j in range(i + 1, n):
            bit = (codes >> np.uint64(p)) & np.uint64(1)
            rows[:, i] |= bit << np.uint64(j)
            rows[:, j] |= bit << np.uint64(i)
            p += 1
    return np.bincount(batch_rank(rows, n), minlength=n + 1)


def alternating_census(n: int, allow_long: bool = False, threads: int = 1) -> RankCensus:
    """Exact number of zero-diagonal symmetric n x n matrices of each rank."""
    if n < 0:
        raise InputError(f"n must be non-negative, got {n}")
    limit = LONG_CENSUS_N if allow_long else MAX_CENSUS_N
    if n > limit:
        raise CapacityError(f"alternating census needs n <= {limit}; got n={n}")
    size = 1 << num_pairs(n)
    chunk = 1 << 16
    bounds = [(s, min(s + chunk, size)) for s in range(0, size, chunk)]
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _census_chunk(n, *b), bounds))
    else:
        parts = [_census_chunk(n, *b) for b in bounds]
    hist = np.sum(parts, axis=0)
    return RankCensus(n, {r: int(c) for r, c in enumerate(hist) if c})


def alt_count_bound(n: int, r: int) -> int:
    """2^{r(n-r) + r + r(r-1)/2}, an upper bound on the number of rank-r alternating forms."""
    if r % 2:
        raise InputError(f"alternating forms have even rank; got r={r}")
    if not 0 <= r <= n:
        raise InputError(f"rank r={r} outside 0..{n}")
    return 1 << (r * (n - r) + r + r * (r - 1) // 2)


def _check_s(n: int, s: int) -> None:
    if not 0 <= s <= n:
        raise InputError(f"deficiency s={s} outside 0..{n}")


def rank_tail_bound(n: int, s: int) -> Fraction:
    """n^s / 2^{s(s-1)/2}: bound on P(rank M <= n - s) for uniform symmetric M."""
    _check_s(n, s)
    return Fraction(n**s, 1 << (s * (s - 1) // 2))


def lowertail_bound(n: int, s: int) -> Fraction:
    """max(0, 1 - 2^n n^s 2^{-s(s-1)/2}), a lower bound on d_n(n - s)."""
    _check_s(n, s)
    return max(Fraction(0), 1 - (1 << n) * rank_tail_bound(n, s))


def ball_volume_bound(n: int, s: int) -> Fraction:
    """2^{m+n} n^s 2^{-s(s-1)/2}, an upper bound on |B_{n-s}|."""
    _check_s(n, s)
    return (1 << (num_pairs(n) + n)) * rank_tail_bound(n, s)


@dataclass(frozen=True)
class TailRow:
    s: int
    hits: int
    trials: int
    estimate: float
    ci_low: float
    ci_high: float
    std_error: float
    bound: Fraction


@dataclass(frozen=True)
class TailEstimate:
    n: int
    trials: int
    seed: int
    rank_histogram: dict[int, int]
    rows: list[TailRow] = field(default_factory=list)


def batch_generator(seed: int, batch: int) -> np.random.Generator:
    """Counter-based stream for one batch; depends only on (seed, batch)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(batch,))))


def random_symmetric_rows(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Packed rows (count, n, nwords) of uniform symmetric matrices, diagonal included."""
    upper = np.triu(rng.integers(0, 2, size=(count, n, n), dtype=np.uint8))
    full = upper | np.swapaxes(np.triu(upper, 1), 1, 2)
    return _pack_bits(full, n)


def _sample_batch(n: int, seed: int, batch: int, count: int) -> np.ndarray:
    rows = random_symmetric_rows(n, count, batch_generator(seed, batch))
    return np.bincount(batch_rank(rows, n), minlength=n + 1)


def sample_symmetric_rank_tail(n: int, trials: int, seed: int, threads: int = 1) -> TailEstimate:
    """Monte Carlo estimate of P(rank M <= n - s) for every s from one rank histogram.

    Trials are cut into fixed-size batches with their own streams, so results
    do not depend on ``threads``.
    """
    if trials < 1:
        raise InputError(f"trials must be positive, got {trials}")
    if not 1 <= n <= MAX_SAMPLE_N:
        raise InputError(f"n must lie in 1..{MAX_SAMPLE_N}, got {n}")
    jobs = [(b, min(SAMPLE_BATCH, trials - b * SAMPLE_BATCH)) for b in range(-(-trials // SAMPLE_BATCH))]
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda j: _sample_batch(n, seed, *j), jobs))
    else:
        parts = [_sample_batch(n, seed, *j) for j in jobs]
    hist = np.sum(parts, axis=0)
    cumulative = np.cumsum(hist)
    rows = []
    for s in range(n + 1):
        hits = int(cumulative[n - s])
        p = hits / trials
        ci = binomtest(hits, trials).proportion_ci(confidence_level=0.95, method="wilson")
        rows.append(
            TailRow(s, hits, trials, p, float(ci.low), float(ci.high), math.sqrt(p * (1 - p) / trials), rank_tail_bound(n, s))
        )
    return TailEstimate(n, trials, seed, {r: int(c) for r, c in enumerate(hist) if c}, rows)
