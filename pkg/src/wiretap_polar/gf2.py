"""GF(2) linear algebra: the polar butterfly transform and bit-packed rank machinery.

Bit vectors are numpy ``uint8`` arrays holding 0/1 values.  Matrices over
GF(2) are held in :class:`BitMatrix`, which packs each row into a Python
integer bitset (bit ``j`` of the row integer is column ``j``; bits at and
beyond ``cols`` are always zero).  Elimination pivots are chosen
left-to-right, i.e. lowest column index first.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence

import numpy as np

__all__ = [
    "polar_transform",
    "BitMatrix",
    "rank",
    "intersection_dim",
]


def _require_power_of_two(n: int) -> None:
    if n <= 0 or (n & (n - 1)) != 0:
        raise ValueError(f"length must be a positive power of two, got {n}")


def polar_transform(v: np.ndarray) -> np.ndarray:
    """Multiply bit vectors by the n-by-n Kronecker-power generator, in place ordering.

    ``v`` may be a single vector of length ``n = 2**m`` or any batch with
    trailing axis ``n``; each vector is mapped to ``v @ G^{(x)m}`` over GF(2)
    where ``G = [[1, 0], [1, 1]]``.  Computed with m stages of pairwise XOR
    (no bit-reversal permutation), so row ordering is exactly that of the
    Kronecker product.  The transform is an involution.
    """
    x = np.array(v, dtype=np.uint8, copy=True)
    if np.any(x > 1):
        raise ValueError("bit vectors must contain only 0/1 values")
    n = x.shape[-1]
    _require_power_of_two(n)
    bs = n
    while bs > 1:
        h = bs // 2
        shaped = x.reshape(*x.shape[:-1], n // bs, bs)
        shaped[..., :h] ^= shaped[..., h:]
        bs = h
    return x


class BitMatrix:
    """Matrix over GF(2) with rows packed as integer bitsets."""

    def __init__(self, row_bits: Sequence[int], rows: int, cols: int):
        if rows <= 0 or cols <= 0:
            raise ValueError("rows and cols must be positive")
        if len(row_bits) != rows:
            raise ValueError("row count mismatch")
        mask = (1 << cols) - 1
        for r in row_bits:
            if r < 0 or r & ~mask:
                raise ValueError("row has bits set beyond the column count")
        self.row_bits: List[int] = list(row_bits)
        self.rows = rows
        self.cols = cols

    @classmethod
    def from_dense(cls, a) -> "BitMatrix":
        """Pack a 2-D array of 0/1 values."""
        a = np.asarray(a, dtype=np.uint8)
        if a.ndim != 2:
            raise ValueError("expected a 2-D array")
        if np.any(a > 1):
            raise ValueError("entries must be 0/1")
        rows, cols = a.shape
        bits = []
        for row in a:
            v = 0
            for j in np.flatnonzero(row):
                v |= 1 << int(j)
            bits.append(v)
        return cls(bits, rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls([1 << i for i in range(n)], n, n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls([0] * rows, rows, cols)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i, r in enumerate(self.row_bits):
            while r:
                j = (r & -r).bit_length() - 1
                out[i, j] = 1
                r &= r - 1
        return out

    def transpose(self) -> "BitMatrix":
        cols = [0] * self.cols
        for i, r in enumerate(self.row_bits):
            while r:
                j = (r & -r).bit_length() - 1
                cols[j] |= 1 << i
                r &= r - 1
        return BitMatrix(cols, self.cols, self.rows)

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        """Rows of self followed by rows of other (same column count)."""
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return BitMatrix(self.row_bits + other.row_bits,
                         self.rows + other.rows, self.cols)

    def __eq__(self, other) -> bool:
        return (isinstance(other, BitMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.row_bits == other.row_bits)

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


def _rank_of_bits(row_bits: Iterable[int]) -> int:
    """Rank of integer-bitset rows, pivoting on the lowest set bit."""
    basis: dict[int, int] = {}
    for x in row_bits:
        while x:
            p = (x & -x).bit_length() - 1
            held = basis.get(p)
            if held is None:
                basis[p] = x
                break
            x ^= held
    return len(basis)


def rank(m: BitMatrix) -> int:
    """GF(2) rank via bit-packed Gaussian elimination."""
    return _rank_of_bits(m.row_bits)


def intersection_dim(basis_u: BitMatrix, basis_v: BitMatrix) -> int:
    """Dimension of the intersection of two row spans in a common ambient space.

    Computed as ``rank(U) + rank(V) - rank(U stacked on V)``.  Raises
    ``ValueError`` on an ambient-dimension (column count) mismatch.
    """
    if basis_u.cols != basis_v.cols:
        raise ValueError(
            f"ambient dimension mismatch: {basis_u.cols} != {basis_v.cols}")
    ru = _rank_of_bits(basis_u.row_bits)
    rv = _rank_of_bits(basis_v.row_bits)
    rs = _rank_of_bits(basis_u.row_bits + basis_v.row_bits)
    return ru + rv - rs
