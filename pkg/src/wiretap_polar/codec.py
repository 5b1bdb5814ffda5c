"""Polar encoding and successive-cancellation decoding over erasure channels.

Channel outputs use a 3-symbol alphabet stored in ``uint8`` arrays:
0, 1, and :data:`ERASED` (= 2).  Erasure patterns are boolean masks (or
0-based index sets) marking erased positions.  SC decoding over a BEC uses
exact symbol combination rules, so decisions are either correct or erased,
never wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .bec import BitChannelTable
from .gf2 import polar_transform

__all__ = [
    "ERASED",
    "DecodeResult",
    "encode",
    "apply_erasures",
    "sc_decode_erasure",
    "sc_decode_batch",
    "union_bound_pe",
]

ERASED = np.uint8(2)


@dataclass(frozen=True)
class DecodeResult:
    """Outcome of an SC decode: the recovered input, or the first stuck index."""

    ok: bool
    v: Optional[np.ndarray]
    first_undecodable: Optional[int]


def encode(v: np.ndarray) -> np.ndarray:
    """Polar-encode input bits (delegates to the butterfly transform)."""
    return polar_transform(v)


def apply_erasures(x: np.ndarray, erased) -> np.ndarray:
    """Replace the positions in ``erased`` (mask or index set) with ERASED."""
    y = np.array(x, dtype=np.uint8, copy=True)
    erased = np.asarray(erased)
    mask = np.zeros(y.shape[-1], dtype=bool)
    if erased.size:
        mask[erased if erased.dtype == bool else erased.astype(np.int64)] = True
    y[..., mask] = ERASED
    return y


def _xor_pair(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """XOR of two symbol arrays; erased if either operand is erased."""
    return np.where((a == ERASED) | (b == ERASED), ERASED, a ^ b)


def sc_decode_batch(y: np.ndarray, frozen_mask: np.ndarray,
                    frozen_values: np.ndarray):
    """SC-decode a batch of erased codewords sharing one frozen structure.

    Parameters
    ----------
    y : ndarray, shape (trials, n)
        Symbols in {0, 1, ERASED}.
    frozen_mask : ndarray of bool, shape (n,)
        True at frozen input positions.
    frozen_values : ndarray, shape (n,)
        Substituted bit values; read only where frozen_mask is True.

    Returns
    -------
    v : ndarray, shape (trials, n)
        Decoded inputs.  Rows that failed contain the frozen values and
        zeros for every undecodable decision; check ``first_fail``.
    first_fail : ndarray, shape (trials,)
        0-based index of the first non-frozen decision that was erased,
        or ``n`` for fully successful rows.

    Frozen indices are substituted, never inferred.  Decisions after a
    failure continue with a zero placeholder so the failure index is the
    first one in SC order.
    """
    y = np.asarray(y, dtype=np.uint8)
    if y.ndim != 2:
        raise ValueError("y must be 2-D (trials x n)")
    trials, n = y.shape
    if n <= 0 or (n & (n - 1)) != 0:
        raise ValueError(f"block length must be a power of two, got {n}")
    frozen_mask = np.asarray(frozen_mask, dtype=bool)
    frozen_values = np.asarray(frozen_values, dtype=np.uint8)
    if frozen_mask.shape != (n,) or frozen_values.shape != (n,):
        raise ValueError("frozen_mask and frozen_values must have length n")

    first_fail = np.full(trials, n, dtype=np.int64)

    def rec(yb: np.ndarray, base: int) -> np.ndarray:
        length = yb.shape[1]
        if length == 1:
            sym = yb[:, 0]
            if frozen_mask[base]:
                return np.full((trials, 1), frozen_values[base], dtype=np.uint8)
            newly = (sym == ERASED) & (first_fail == n)
            first_fail[newly] = base
            return np.where(sym == ERASED, np.uint8(0), sym)[:, None]
        h = length // 2
        y1, y2 = yb[:, :h], yb[:, h:]
        a = rec(_xor_pair(y1, y2), base)
        a_enc = polar_transform(a)
        # second look at the lower branch once the upper half is decided
        look = np.where(y1 == ERASED, ERASED, y1 ^ a_enc)
        b = rec(np.where(look != ERASED, look, y2), base + h)
        return np.concatenate([a, b], axis=1)

    v = rec(y, 0)
    return v, first_fail


def sc_decode_erasure(y: np.ndarray, frozen_set: Iterable[int],
                      frozen_values: np.ndarray) -> DecodeResult:
    """SC erasure decoding of a single codeword.

    ``frozen_values`` holds one bit per frozen index, aligned with the
    sorted frozen set.  Returns the full recovered input on success, or a
    failure naming the first non-frozen index whose decision was erased.
    """
    y = np.asarray(y, dtype=np.uint8)
    if y.ndim != 1:
        raise ValueError("y must be a 1-D symbol vector")
    n = y.shape[0]
    frozen = np.asarray(sorted(frozen_set), dtype=np.int64)
    vals = np.asarray(frozen_values, dtype=np.uint8)
    if vals.shape != (frozen.size,):
        raise ValueError("frozen_values must supply one bit per frozen index")
    if frozen.size and (frozen.min() < 0 or frozen.max() >= n):
        raise ValueError("frozen index out of range")
    mask = np.zeros(n, dtype=bool)
    mask[frozen] = True
    full_vals = np.zeros(n, dtype=np.uint8)
    full_vals[frozen] = vals
    v, first_fail = sc_decode_batch(y[None, :], mask, full_vals)
    if first_fail[0] == n:
        return DecodeResult(ok=True, v=v[0], first_undecodable=None)
    return DecodeResult(ok=False, v=None, first_undecodable=int(first_fail[0]))


def union_bound_pe(table: BitChannelTable, active_set: Iterable[int]) -> float:
    """Union bound on SC failure: sum of Bhattacharyya parameters over the set."""
    idx = np.asarray(list(active_set), dtype=np.int64)
    if idx.size == 0:
        return 0.0
    if idx.min() < 0 or idx.max() >= table.n:
        raise ValueError("index out of range")
    return float(np.sum(table.e[idx]))
