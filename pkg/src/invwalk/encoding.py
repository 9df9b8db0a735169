"""
Tournaments as vectors in F_2^m, clique generators and inversion balls.

Vertices are ``0..n-1``.  Coordinate ``p`` of F_2^m is the ``p``-th pair
``(i, j)``, ``i < j``, in lexicographic order.  The reference tournament
orients every pair from the smaller label to the larger one, so a code ``z``
has bit ``p`` set exactly when the tournament reverses that pair.

Inside hot loops group elements are plain integers (bit ``p`` = coordinate
``p``); the public functions convert to and from :class:`Gf2Vector`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import CapacityError, InputError
from .gf2 import Gf2Vector

MAX_BFS_N = 6


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


class EdgeIndex:
    """Lexicographic bijection between pairs {i, j} of [n] and 0..m-1."""

    def __init__(self, n: int):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self.m = num_pairs(n)
        self.pairs: list[tuple[int, int]] = list(combinations(range(n), 2))
        self._pos = {p: k for k, p in enumerate(self.pairs)}

    def position(self, i: int, j: int) -> int:
        if i == j:
            raise InputError(f"pair ({i}, {j}) is not a 2-subset")
        key = (i, j) if i < j else (j, i)
        try:
            return self._pos[key]
        except KeyError:
            raise InputError(f"pair ({i}, {j}) out of range for n={self.n}") from None

    def pair(self, p: int) -> tuple[int, int]:
        if not 0 <= p < self.m:
            raise InputError(f"position {p} out of range for m={self.m}")
        return self.pairs[p]

    def __len__(self) -> int:
        return self.m

    def __repr__(self) -> str:
        return f"EdgeIndex(n={self.n})"


@lru_cache(maxsize=None)
def edge_index(n: int) -> EdgeIndex:
    return EdgeIndex(n)


def _subset_mask(n: int, X: Iterable[int]) -> int:
    mask = 0
    for v in X:
        v = int(v)
        if not 0 <= v < n:
            raise InputError(f"vertex {v} out of range for n={n}")
        mask |= 1 << v
    return mask


def clique_code(n: int, X: Iterable[int] | int) -> int:
    """Integer code of v_X.  ``X`` is an iterable of vertices or a bitmask."""
    mask = X if isinstance(X, (int, np.integer)) else _subset_mask(n, X)
    mask = int(mask)
    if mask >> n:
        raise InputError(f"subset mask {mask:#x} has vertices outside range({n})")
    code = 0
    for p, (i, j) in enumerate(edge_index(n).pairs):
        if (mask >> i) & 1 and (mask >> j) & 1:
            code |= 1 << p
    return code


@lru_cache(maxsize=None)
def clique_codes(n: int) -> np.ndarray:
    """Array of length 2^n: entry ``x`` is the code of v_X for the subset with mask ``x``.

    Requires m <= 63 (n <= 11).
    """
    if num_pairs(n) > 63:
        raise CapacityError(f"clique code table needs m <= 63, n={n} gives m={num_pairs(n)}")
    xs = np.arange(1 << n, dtype=np.uint64)
    codes = np.zeros(1 << n, dtype=np.uint64)
    for p, (i, j) in enumerate(edge_index(n).pairs):
        both = (xs >> np.uint64(i)) & (xs >> np.uint64(j)) & np.uint64(1)
        codes |= both << np.uint64(p)
    codes.flags.writeable = False
    return codes


def clique_vector(n: int, X: Iterable[int]) -> Gf2Vector:
    """v_X: ones on the pairs inside ``X``."""
    return Gf2Vector.from_int(clique_code(n, X), num_pairs(n))


@dataclass(frozen=True)
class TournamentCode:
    """A labelled tournament, stored as its disagreement vector with the reference."""

    n: int
    z: Gf2Vector

    def __post_init__(self):
        if self.z.length != num_pairs(self.n):
            raise InputError(f"code length {self.z.length} != m={num_pairs(self.n)}")

    @classmethod
    def reference(cls, n: int) -> TournamentCode:
        return cls(n, Gf2Vector.zeros(num_pairs(n)))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> TournamentCode:
        """Build from directed arcs ``(u, v)`` meaning u -> v; every pair must appear once."""
        idx = edge_index(n)
        seen = set()
        bits = np.zeros(idx.m, dtype=np.uint8)
        for u, v in arcs:
            p = idx.position(u, v)
            if p in seen:
                raise InputError(f"pair {{{u}, {v}}} oriented twice")
            seen.add(p)
            bits[p] = u > v
        if len(seen) != idx.m:
            raise InputError("arcs do not cover every pair")
        return cls(n, Gf2Vector.from_bits(bits))

    def arcs(self) -> list[tuple[int, int]]:
        out = []
        for p, (i, j) in enumerate(edge_index(self.n).pairs):
            out.append((j, i) if self.z[p] else (i, j))
        return out


def invert(code: TournamentCode, X: Iterable[int]) -> TournamentCode:
    """Reverse every arc with both ends in ``X``."""
    return TournamentCode(code.n, code.z + clique_vector(code.n, X))


def _check_bfs_capacity(n: int) -> None:
    if n < 0:
        raise InputError(f"vertex count must be non-negative, got {n}")
    if n > MAX_BFS_N:
        raise CapacityError(f"exhaustive inversion balls need n <= {MAX_BFS_N} (2^{num_pairs(MAX_BFS_N)} states); got n={n}")


def cayley_distances(num_bits: int, generators: Iterable[int]) -> np.ndarray:
    """BFS distances from 0 in the Cayley graph of F_2^num_bits; -1 marks unreachable."""
    size = 1 << num_bits
    gens = np.unique(np.asarray([g for g in generators if g], dtype=np.int64))
    dist = np.full(size, -1, dtype=np.int16)
    dist[0] = 0
    frontier = np.array([0], dtype=np.int64)
    d = 0
    while frontier.size and gens.size:
        d += 1
        nxt = np.unique((frontier[:, None] ^ gens[None, :]).ravel())
        nxt = nxt[dist[nxt] < 0]
        dist[nxt] = d
        frontier = nxt
    dist.flags.writeable = False
    return dist


@lru_cache(maxsize=None)
def _inversion_distances(n: int) -> np.ndarray:
    _check_bfs_capacity(n)
    return cayley_distances(num_pairs(n), clique_codes(n).astype(np.int64))


def inversion_distance(n: int, z1: Gf2Vector, z2: Gf2Vector) -> int:
    """Minimum number of inversions turning z1 into z2."""
    m = num_pairs(n)
    for z in (z1, z2):
        if z.length != m:
            raise InputError(f"code length {z.length} != m={m}")
    return int(_inversion_distances(n)[(z1 + z2).to_int()])


def diameter(n: int) -> int:
    return int(_inversion_distances(n).max())


def ball_sizes(n: int) -> list[int]:
    """|B_t| for t = 0..diameter (independent of the centre)."""
    dist = _inversion_distances(n)
    return np.cumsum(np.bincount(dist)).tolist()


def ball_size(n: int, t: int) -> int:
    if t < 0:
        raise InputError(f"radius must be non-negative, got {t}")
    sizes = ball_sizes(n)
    return sizes[min(t, len(sizes) - 1)]


def ball_mask(n: int, t: int) -> np.ndarray:
    """Boolean indicator over the 2^m codes of the ball of radius ``t`` around 0."""
    if t < 0:
        raise InputError(f"radius must be non-negative, got {t}")
    return _inversion_distances(n) <= t


def inversion_ball(n: int, t: int) -> set[Gf2Vector]:
    """All codes within inversion distance ``t`` of the reference tournament."""
    m = num_pairs(n)
    return {Gf2Vector.from_int(int(z), m) for z in np.flatnonzero(ball_mask(n, t))}
