"""
Dense GF(2) linear algebra on bit-packed words, plus the Walsh-Hadamard transform.

Vectors and matrix rows are stored little-endian in ``uint64`` words: bit ``i``
lives in word ``i // 64`` at position ``i % 64``.  Elimination is word-parallel
XOR of whole rows.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

WORD_BITS = 64
_ONE = np.uint64(1)


def _nwords(length: int) -> int:
    return (length + WORD_BITS - 1) // WORD_BITS


def _tail_mask(length: int) -> np.uint64:
    rem = length % WORD_BITS
    return np.uint64((1 << rem) - 1) if rem else np.uint64(0xFFFFFFFFFFFFFFFF)


def _pack_bits(bits: np.ndarray, length: int) -> np.ndarray:
    """Pack a (..., length) 0/1 array into (..., nwords) uint64."""
    bits = np.asarray(bits, dtype=np.uint8) & 1
    nbytes = _nwords(length) * 8
    packed = np.packbits(bits, axis=-1, bitorder="little")
    pad = nbytes - packed.shape[-1]
    if pad:
        widths = [(0, 0)] * (packed.ndim - 1) + [(0, pad)]
        packed = np.pad(packed, widths)
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def _unpack_bits(words: np.ndarray, length: int) -> np.ndarray:
    raw = np.ascontiguousarray(words.astype("<u8")).view(np.uint8)
    return np.unpackbits(raw, axis=-1, bitorder="little")[..., :length]


class Gf2Vector:
    """Immutable element of F_2^length."""

    __slots__ = ("length", "words")

    def __init__(self, length: int, words: np.ndarray | None = None):
        if length < 0:
            raise InputError(f"negative vector length {length}")
        nw = _nwords(length)
        if words is None:
            w = np.zeros(nw, dtype=np.uint64)
        else:
            w = np.array(words, dtype=np.uint64).reshape(-1)
            if w.shape[0] != nw:
                raise InputError(f"expected {nw} words for length {length}, got {w.shape[0]}")
            if nw:
                w[-1] &= _tail_mask(length)
        w.flags.writeable = False
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "words", w)

    def __setattr__(self, name, value):
        raise AttributeError("Gf2Vector is immutable")

    @classmethod
    def zeros(cls, length: int) -> Gf2Vector:
        return cls(length)

    @classmethod
    def from_int(cls, value: int, length: int) -> Gf2Vector:
        """Bit ``i`` of ``value`` becomes coordinate ``i``."""
        value = int(value)
        if value < 0 or value >> length:
            raise InputError(f"{value} does not fit in {length} bits")
        mask = (1 << WORD_BITS) - 1
        words = [(value >> (WORD_BITS * i)) & mask for i in range(_nwords(length))]
        return cls(length, np.array(words, dtype=np.uint64))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> Gf2Vector:
        arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits, dtype=np.uint8)
        return cls(arr.shape[0], _pack_bits(arr, arr.shape[0]))

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> Gf2Vector:
        """Vector with ones exactly at ``indices`` (repeated indices cancel)."""
        value = 0
        for i in indices:
            if not 0 <= i < length:
                raise InputError(f"index {i} out of range for length {length}")
            value ^= 1 << i
        return cls.from_int(value, length)

    def to_int(self) -> int:
        out = 0
        for i, w in enumerate(self.words):
            out |= int(w) << (WORD_BITS * i)
        return out

    def to_bits(self) -> np.ndarray:
        return _unpack_bits(self.words, self.length)

    def support(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.to_bits())]

    def weight(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def dot(self, other: Gf2Vector) -> int:
        """Standard inner product over GF(2)."""
        self._check(other)
        return int(np.bitwise_count(self.words & other.words).sum()) & 1

    def _check(self, other: Gf2Vector) -> None:
        if not isinstance(other, Gf2Vector):
            raise TypeError(f"expected Gf2Vector, got {type(other).__name__}")
        if other.length != self.length:
            raise InputError(f"length mismatch: {self.length} vs {other.length}")

    def __add__(self, other: Gf2Vector) -> Gf2Vector:
        self._check(other)
        return Gf2Vector(self.length, self.words ^ other.words)

    __xor__ = __add__
    __sub__ = __add__

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not -self.length <= i < self.length:
            raise IndexError(i)
        i %= self.length
        return int((self.words[i // WORD_BITS] >> np.uint64(i % WORD_BITS)) & _ONE)

    def __bool__(self) -> bool:
        return bool(self.words.any())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gf2Vector):
            return NotImplemented
        return self.length == other.length and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.length, self.words.tobytes()))

    def __repr__(self) -> str:
        bits = "".join(str(b) for b in self.to_bits()) if self.length <= 64 else f"<{self.length} bits>"
        return f"Gf2Vector({bits})"


class Gf2Matrix:
    """Immutable dense matrix over GF(2) with bit-packed rows."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray | None = None):
        if rows < 0 or cols < 0:
            raise InputError(f"invalid shape ({rows}, {cols})")
        nw = _nwords(cols)
        if data is None:
            d = np.zeros((rows, nw), dtype=np.uint64)
        else:
            d = np.array(data, dtype=np.uint64).reshape(rows, nw)
            if nw:
                d[:, -1] &= _tail_mask(cols)
        d.flags.writeable = False
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", d)

    def __setattr__(self, name, value):
        raise AttributeError("Gf2Matrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Gf2Matrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> Gf2Matrix:
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_dense(cls, a) -> Gf2Matrix:
        a = np.asarray(a, dtype=np.int64) % 2
        if a.ndim != 2:
            raise InputError("dense matrix must be 2-D")
        r, c = a.shape
        return cls(r, c, _pack_bits(a, c) if r else np.zeros((0, _nwords(c)), dtype=np.uint64))

    @classmethod
    def from_rows(cls, vectors: Sequence[Gf2Vector], cols: int | None = None) -> Gf2Matrix:
        if not vectors:
            return cls(0, cols or 0)
        cols = vectors[0].length if cols is None else cols
        for v in vectors:
            if v.length != cols:
                raise InputError(f"row length {v.length} differs from {cols}")
        return cls(len(vectors), cols, np.stack([v.words for v in vectors]))

    @classmethod
    def from_int_rows(cls, rows: Sequence[int], cols: int) -> Gf2Matrix:
        return cls.from_rows([Gf2Vector.from_int(r, cols) for r in rows], cols)

    def to_dense(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros((0, self.cols), dtype=np.uint8)
        return _unpack_bits(self.data, self.cols)

    def row(self, i: int) -> Gf2Vector:
        return Gf2Vector(self.cols, self.data[i])

    def column(self, j: int) -> Gf2Vector:
        return Gf2Vector.from_bits(self.to_dense()[:, j])

    def transpose(self) -> Gf2Matrix:
        return Gf2Matrix.from_dense(self.to_dense().T)

    @property
    def T(self) -> Gf2Matrix:
        return self.transpose()

    def __matmul__(self, x: Gf2Vector) -> Gf2Vector:
        if not isinstance(x, Gf2Vector):
            return NotImplemented
        if x.length != self.cols:
            raise InputError(f"matrix has {self.cols} columns, vector has length {x.length}")
        parity = np.bitwise_count(self.data & x.words[None, :]).sum(axis=1) & 1
        return Gf2Vector.from_bits(parity.astype(np.uint8))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and bool(np.array_equal(self.data, other.data))

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"Gf2Matrix({self.rows}x{self.cols})"


def _rref(data: np.ndarray, cols: int, pivot_limit: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of packed rows; returns (rows, pivot columns).

    Pivots are taken as the first set bit in each column among unprocessed rows.
    Only columns below ``pivot_limit`` may hold pivots.
    """
    R = np.array(data, dtype=np.uint64, copy=True)
    nrows = R.shape[0]
    pivots: list[int] = []
    r = 0
    limit = cols if pivot_limit is None else pivot_limit
    for c in range(limit):
        if r == nrows:
            break
        w, b = divmod(c, WORD_BITS)
        colbits = ((R[:, w] >> np.uint64(b)) & _ONE).astype(bool)
        below = np.flatnonzero(colbits[r:])
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
            colbits[[r, p]] = colbits[[p, r]]
        colbits[r] = False
        R[colbits] ^= R[r]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: Gf2Matrix) -> int:
    """GF(2) rank by Gaussian elimination."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(_rref(M.data, M.cols)[1])


def kernel_basis(M: Gf2Matrix) -> list[Gf2Vector]:
    """Basis of {x : Mx = 0}, one vector per free column in increasing order.

    Each basis vector has a single free coordinate set; pivot coordinates are
    read off the reduced echelon form, so the output is deterministic.
    """
    if M.rows == 0:
        return [Gf2Vector.from_indices(M.cols, [j]) for j in range(M.cols)]
    R, pivots = _rref(M.data, M.cols)
    dense = _unpack_bits(R[: len(pivots)], M.cols) if pivots else np.zeros((0, M.cols), dtype=np.uint8)
    pivot_set = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivot_set:
            continue
        x = np.zeros(M.cols, dtype=np.uint8)
        x[f] = 1
        for i, p in enumerate(pivots):
            x[p] = dense[i, f]
        basis.append(Gf2Vector.from_bits(x))
    return basis


def span_dim(vectors: Sequence[Gf2Vector]) -> int:
    """Dimension of the span of ``vectors``."""
    if not vectors:
        return 0
    return rank(Gf2Matrix.from_rows(list(vectors)))


def solve(M: Gf2Matrix, b: Gf2Vector) -> Gf2Vector | None:
    """One solution of Mx = b, or None if the system is inconsistent."""
    if b.length != M.rows:
        raise InputError(f"right-hand side has length {b.length}, matrix has {M.rows} rows")
    aug = np.concatenate([M.to_dense(), b.to_bits()[:, None]], axis=1)
    A = Gf2Matrix.from_dense(aug)
    R, pivots = _rref(A.data, A.cols, pivot_limit=M.cols)
    dense = _unpack_bits(R, A.cols) if A.rows else aug
    # a zero row with rhs 1 sits below the pivot rows
    if dense[len(pivots):, M.cols].any():
        return None
    x = np.zeros(M.cols, dtype=np.uint8)
    for i, p in enumerate(pivots):
        x[p] = dense[i, M.cols]
    return Gf2Vector.from_bits(x)


def batch_rank(rows: np.ndarray, ncols: int) -> np.ndarray:
    """Ranks of a stack of packed matrices.

    ``rows`` has shape (batch, nrows) for single-word rows or (batch, nrows,
    nwords).  Forward elimination runs column by column across the whole batch.
    """
    work = np.array(rows, dtype=np.uint64, copy=True)
    if work.ndim == 2:
        work = work[:, :, None]
    B, R, _ = work.shape
    out = np.zeros(B, dtype=np.int64)
    if B == 0 or R == 0:
        return out
    free = np.ones((B, R), dtype=bool)
    idx = np.arange(B)
    zero = np.uint64(0)
    for c in range(ncols):
        w, b = divmod(c, WORD_BITS)
        bits = ((work[:, :, w] >> np.uint64(b)) & _ONE).astype(bool)
        bits &= free
        has = bits.any(axis=1)
        if not has.any():
            continue
        piv = bits.argmax(axis=1)
        prow = work[idx, piv]
        bits[idx, piv] = False
        work ^= np.where(bits[:, :, None], prow[:, None, :], zero)
        free[idx[has], piv[has]] = False
        out += has
    return out


_INT64_SAFE = 1 << 62


def walsh_hadamard(table) -> np.ndarray:
    """Unnormalised transform  s^(A) = sum_z s(z) (-1)^<A,z>  over F_2^m.

    Integer tables run in int64 and raise OverflowError before any butterfly
    could wrap.  Float and object (Python int) tables are transformed as-is.
    Applying the transform twice multiplies by 2^m.
    """
    a = np.array(table, copy=True)
    if a.ndim != 1:
        raise InputError("table must be 1-D")
    size = a.shape[0]
    if size == 0 or size & (size - 1):
        raise InputError(f"table length {size} is not a power of two")
    integer = a.dtype.kind in "iub"
    if integer:
        if a.dtype.kind == "u" and size and int(a.max()) >= _INT64_SAFE:
            raise OverflowError("entry exceeds the signed 64-bit transform range")
        a = a.astype(np.int64)
    h = 1
    while h < size:
        if integer and (int(a.max()) >= _INT64_SAFE or int(a.min()) <= -_INT64_SAFE):
            raise OverflowError(f"Walsh-Hadamard stage h={h} would overflow int64")
        v = a.reshape(-1, 2, h)
        x = v[:, 0, :].copy()
        y = v[:, 1, :]
        v[:, 0, :] = x + y
        v[:, 1, :] = x - y
        h *= 2
    return a
