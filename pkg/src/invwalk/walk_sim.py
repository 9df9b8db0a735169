"""
Simulation and exact evolution of the inversion walk and its variants.

``exact_evolution`` convolves the step measure directly and is kept
independent of the Fourier route in :mod:`invwalk.spectral`.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.stats import binom

from . import spectral
from .encoding import ball_mask, cayley_distances, clique_code, clique_codes, num_pairs
from .errors import CapacityError, InputError
from .gf2 import Gf2Vector
from .rank_stats import batch_generator, lowertail_bound

VARIANTS = ("full", "k", "hypercube")
MAX_RATIONAL_N = 4
MAX_FLOAT_N = 6
MAX_FREQUENCY_N = 5
MAX_HYPERCUBE_M = 62
MC_BATCH = 8192


@dataclass(frozen=True)
class WalkConfig:
    """One walk: ``variant`` is 'full', 'k' (k-subsets) or 'hypercube' (lazy, m coordinates)."""

    n: int = 0
    variant: str = "full"
    k: int | None = None
    m: int | None = None
    horizon: int = 0
    trials: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise InputError(f"unknown variant {self.variant!r}; choose from {VARIANTS}")
        if self.horizon < 0:
            raise InputError(f"horizon must be non-negative, got {self.horizon}")
        if self.trials < 1:
            raise InputError(f"trials must be positive, got {self.trials}")
        if self.variant == "hypercube":
            if self.m is None or not 1 <= self.m <= MAX_HYPERCUBE_M:
                raise InputError(f"hypercube variant needs 1 <= m <= {MAX_HYPERCUBE_M}, got m={self.m}")
        else:
            if self.n < 1:
                raise InputError(f"n must be positive, got {self.n}")
            if self.variant == "k" and (self.k is None or not 0 <= self.k <= self.n):
                raise InputError(f"k-restricted variant needs 0 <= k <= n, got k={self.k}")

    @property
    def dimension(self) -> int:
        return self.m if self.variant == "hypercube" else num_pairs(self.n)


def _partial_fisher_yates(n: int, k: int, rng: np.random.Generator) -> list[int]:
    items = list(range(n))
    for i in range(k):
        j = int(rng.integers(i, n))
        items[i], items[j] = items[j], items[i]
    return items[:k]


def step(state: Gf2Vector, config: WalkConfig, rng: np.random.Generator) -> Gf2Vector:
    """One transition of the configured walk."""
    if state.length != config.dimension:
        raise InputError(f"state length {state.length} != {config.dimension}")
    if config.variant == "hypercube":
        if rng.integers(0, 2) == 0:
            return state
        return state + Gf2Vector.from_indices(state.length, [int(rng.integers(0, config.m))])
    if config.variant == "full":
        X = [v for v in range(config.n) if rng.integers(0, 2)]
    else:
        X = _partial_fisher_yates(config.n, config.k, rng)
    return state + Gf2Vector.from_int(clique_code(config.n, X), state.length)


def step_measure(n: int, k: int | None = None) -> dict[int, int]:
    """Multiplicity of each increment code: all 2^n subsets, or the C(n, k) k-subsets."""
    if k is None:
        codes = clique_codes(n).tolist()
    else:
        codes = [clique_code(n, X) for X in combinations(range(n), k)]
    out: dict[int, int] = {}
    for c in codes:
        out[int(c)] = out.get(int(c), 0) + 1
    return out


def exact_evolution(n: int, t: int, exact: bool = True) -> np.ndarray:
    """mu_t from the reference tournament by t-fold convolution with the step measure.

    Rational mode (n <= 4) returns an object array of Fractions; float mode (n <= 6)
    returns float64.
    """
    if t < 0:
        raise InputError(f"time must be non-negative, got {t}")
    limit = MAX_RATIONAL_N if exact else MAX_FLOAT_N
    if not 1 <= n <= limit:
        raise CapacityError(f"{'rational' if exact else 'float'} convolution needs 1 <= n <= {limit}; got n={n}")
    size = 1 << num_pairs(n)
    states = np.arange(size)
    measure = step_measure(n)
    if exact:
        numer = np.zeros(size, dtype=object)
        numer[:] = 0
        numer[0] = 1
        for _ in range(t):
            nxt = np.zeros(size, dtype=object)
            nxt[:] = 0
            for code, mult in measure.items():
                nxt = nxt + mult * numer[states ^ code]
            numer = nxt
        den = 1 << (n * t)
        return np.array([Fraction(int(v), den) for v in numer], dtype=object)
    mu = np.zeros(size)
    mu[0] = 1.0
    weights = {c: w / float(1 << n) for c, w in measure.items()}
    for _ in range(t):
        nxt = np.zeros(size)
        for code, w in weights.items():
            nxt += w * mu[states ^ code]
        mu = nxt
    return mu


def tv_to_uniform(mu) -> float | Fraction:
    """1/2 sum |mu(z) - 1/N|; exact when ``mu`` holds Fractions."""
    N = len(mu)
    if isinstance(mu, np.ndarray) and mu.dtype != object:
        return 0.5 * math.fsum(np.abs(mu - 1.0 / N).tolist())
    u = Fraction(1, N)
    return sum((abs(p - u) for p in mu), Fraction(0)) / 2


def _increment_table(config: WalkConfig) -> np.ndarray:
    if config.variant == "full":
        return clique_codes(config.n).astype(np.int64)
    return np.array([clique_code(config.n, X) for X in combinations(range(config.n), config.k)], dtype=np.int64)


def _simulate_batch(config: WalkConfig, t: int, batch: int, count: int) -> np.ndarray:
    rng = batch_generator(config.seed, batch)
    state = np.zeros(count, dtype=np.int64)
    if config.variant == "hypercube":
        for _ in range(t):
            move = rng.integers(0, 2, size=count, dtype=np.int64)
            coord = rng.integers(0, config.m, size=count, dtype=np.int64)
            state ^= move << coord
        return state
    table = _increment_table(config)
    for _ in range(t):
        state ^= table[rng.integers(0, table.shape[0], size=count)]
    return state


def simulate_final_states(config: WalkConfig, t: int, threads: int = 1) -> np.ndarray:
    """Integer codes of the state at time ``t`` for ``config.trials`` runs from 0."""
    if config.variant != "hypercube" and num_pairs(config.n) > 62:
        raise CapacityError(f"simulation packs states into 62 bits; n={config.n} is too large")
    jobs = [(b, min(MC_BATCH, config.trials - b * MC_BATCH)) for b in range(-(-config.trials // MC_BATCH))]
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda j: _simulate_batch(config, t, *j), jobs))
    else:
        parts = [_simulate_batch(config, t, *j) for j in jobs]
    return np.concatenate(parts)


@dataclass(frozen=True)
class McEstimate:
    mode: str
    t: int
    value: float
    trials: int | None = None
    bias_bound: float | None = None
    exact: float | None = None


def reachable_coset(config: WalkConfig) -> np.ndarray:
    """Indicator of the subgroup generated by the walk's increments."""
    dist = cayley_distances(num_pairs(config.n), _increment_table(config).tolist())
    return dist >= 0


def mc_tv_estimate(config: WalkConfig, t: int, mode: str = "frequency", threads: int = 1) -> McEstimate:
    """Empirical TV (frequency mode) or the exact ball-support lower bound (support mode).

    Frequency mode compares the empirical histogram with the uniform law on the
    reachable subgroup; it is biased upwards, by at most about sqrt(N / trials).
    """
    if config.variant == "hypercube":
        raise InputError("use hypercube_profile for the hypercube variant")
    if config.n > MAX_FREQUENCY_N:
        raise CapacityError(f"state-space statistics need n <= {MAX_FREQUENCY_N}; got n={config.n}")
    if t < 0:
        raise InputError(f"time must be non-negative, got {t}")
    m = num_pairs(config.n)
    if mode == "support":
        if config.variant != "full":
            raise InputError("support mode uses inversion balls of the full walk")
        inside = int(ball_mask(config.n, t).sum())
        return McEstimate("support", t, 1.0 - inside / float(1 << m))
    if mode != "frequency":
        raise InputError(f"unknown mode {mode!r}")
    states = simulate_final_states(config, t, threads)
    hist = np.bincount(states, minlength=1 << m) / config.trials
    coset = reachable_coset(config)
    support = int(coset.sum())
    target = np.where(coset, 1.0 / support, 0.0)
    value = 0.5 * math.fsum(np.abs(hist - target).tolist())
    exact = spectral.exact_tv(config.n, t) if config.variant == "full" and t >= 1 else None
    return McEstimate("frequency", t, value, config.trials, math.sqrt(support / config.trials), exact)


@dataclass(frozen=True)
class ProfileRow:
    t: int
    d_exact: float | None
    d_l2_upper: float | None
    d_paper_upper: float | None
    d_paper_lower: float | None
    d_mc_estimate: float | None = None


PROFILE_FIELDS = ("t", "d_exact", "d_l2_upper", "d_paper_upper", "d_paper_lower", "d_mc_estimate")


def cutoff_profile(n: int, t_max: int, t_min: int = 0) -> list[ProfileRow]:
    """Exact distance and every bound, per time step.

    Bound columns are clipped at 1, which keeps them valid TV bounds.
    The exact and l2 columns are None when n exceeds the exhaustive spectrum limit.
    """
    if not 0 <= t_min <= t_max:
        raise InputError(f"need 0 <= t_min <= t_max, got {t_min}, {t_max}")
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    spec = spectral.full_spectrum(n) if n <= spectral.MAX_SPECTRUM_N else None
    m = num_pairs(n)
    rows = []
    for t in range(t_min, t_max + 1):
        d = l2 = None
        if spec is not None:
            d = 1.0 - 2.0**-m if t == 0 else spectral.exact_tv(n, t)
            l2 = min(1.0, spectral.l2_tv_upper(spec, t))
        upper = min(1.0, spectral.uppertail_bound(t - n)) if t >= n else None
        lower = float(lowertail_bound(n, n - t)) if t <= n else None
        rows.append(ProfileRow(t, d, l2, upper, lower))
    return rows


def hypercube_cutoff_time(m: int) -> float:
    return 0.5 * m * math.log(m)


def hypercube_weight_law(m: int, t: int) -> np.ndarray:
    """Exact law of the Hamming weight of the lazy walk after t steps from 0."""
    p = np.zeros(m + 1)
    p[0] = 1.0
    w = np.arange(m + 1)
    down = w / (2.0 * m)
    up = (m - w) / (2.0 * m)
    for _ in range(t):
        nxt = 0.5 * p
        nxt[:-1] += (p * down)[1:]
        nxt[1:] += (p * up)[:-1]
        p = nxt
    return p


def _binomial_half(m: int) -> np.ndarray:
    return binom.pmf(np.arange(m + 1), m, 0.5)


def hypercube_weight_tv(m: int, t: int) -> float:
    """TV between the exact weight law and Binomial(m, 1/2).

    By symmetry of coordinates this equals the walk's TV distance from uniform.
    """
    return 0.5 * float(np.abs(hypercube_weight_law(m, t) - _binomial_half(m)).sum())


def default_hypercube_times(m: int, points: int = 9) -> list[int]:
    """Geometric grid from 0.1x to 4x the cutoff time (m/2) ln m."""
    centre = hypercube_cutoff_time(m)
    grid = np.geomspace(0.1 * centre, 4.0 * centre, points)
    return sorted({0, *(int(round(g)) for g in grid)})


@dataclass(frozen=True)
class HypercubeRow:
    t: int
    statistic: float
    exact: float
    bias_bound: float


def hypercube_profile(m: int, trials: int, t_points=None, seed: int = 0, threads: int = 1) -> list[HypercubeRow]:
    """Weight statistic of the lazy single-edge walk: TV of the empirical weight histogram from Binomial(m, 1/2)."""
    if not 1 <= m <= MAX_HYPERCUBE_M:
        raise InputError(f"need 1 <= m <= {MAX_HYPERCUBE_M}, got m={m}")
    times = default_hypercube_times(m) if t_points is None else [int(t) for t in t_points]
    target = _binomial_half(m)
    rows = []
    for t in times:
        config = WalkConfig(variant="hypercube", m=m, horizon=t, trials=trials, seed=seed)
        states = simulate_final_states(config, t, threads)
        weights = np.bitwise_count(states.astype(np.uint64)).astype(np.int64)
        hist = np.bincount(weights, minlength=m + 1) / trials
        stat = 0.5 * float(np.abs(hist - target).sum())
        rows.append(HypercubeRow(t, stat, hypercube_weight_tv(m, t), math.sqrt((m + 1) / trials)))
    return rows
