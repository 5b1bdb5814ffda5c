"""Exact bit-channel parameter evolution for binary erasure channels.

A BEC with erasure probability ``e`` has capacity ``1 - e`` and
Bhattacharyya parameter ``e``, so all bit-channel bookkeeping reduces to
tracking per-index erasure probabilities.  The index convention is shared
by every module in this package: bit-channel ``i`` (0-based) is input
position ``i`` of ``v`` in ``x = v @ G^{(x)m}`` with natural (non
bit-reversed) Kronecker ordering.  Under that convention the table at
level ``m`` is obtained by expanding each entry ``e`` in place into the
pair ``(2e - e^2, e^2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "BecParam",
    "BitChannelTable",
    "evolve",
    "good_set",
    "capacity_sum",
    "check_degradation_nesting",
]


@dataclass(frozen=True)
class BecParam:
    """A binary erasure channel, identified by its erasure probability."""

    erasure: float

    def __post_init__(self):
        if not 0.0 <= self.erasure <= 1.0:
            raise ValueError(f"erasure must be in [0, 1], got {self.erasure}")

    def capacity(self) -> float:
        return 1.0 - self.erasure

    def bhattacharyya(self) -> float:
        return self.erasure


@dataclass(frozen=True)
class BitChannelTable:
    """Per-index bit-channel erasure probabilities for block length ``n = 2**m``.

    ``e[i]`` is the erasure probability of bit-channel ``i``; its capacity
    is ``1 - e[i]`` and its Bhattacharyya parameter is ``e[i]``.  The sum of
    capacities over all indices equals ``n * channel.capacity()``.
    """

    n: int
    e: np.ndarray
    channel: BecParam

    def __post_init__(self):
        if self.n <= 0 or (self.n & (self.n - 1)) != 0:
            raise ValueError(f"n must be a power of two, got {self.n}")
        e = np.asarray(self.e, dtype=np.float64)
        if e.shape != (self.n,):
            raise ValueError("e must have exactly n entries")
        e.setflags(write=False)
        object.__setattr__(self, "e", e)

    def capacities(self) -> np.ndarray:
        return 1.0 - self.e


def evolve(channel: BecParam, m: int) -> BitChannelTable:
    """Exact bit-channel erasure probabilities after ``m`` polarization levels.

    Each level maps an erasure value ``e`` to the pair ``(2e - e^2, e^2)``;
    in-place pair expansion yields the natural Kronecker index order.
    Deterministic, exact BEC arithmetic in double precision.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    e = np.array([channel.erasure], dtype=np.float64)
    for _ in range(m):
        out = np.empty(2 * e.size, dtype=np.float64)
        out[0::2] = 2.0 * e - e * e
        out[1::2] = e * e
        e = out
    return BitChannelTable(n=1 << m, e=e, channel=channel)


def good_set(table: BitChannelTable, threshold: float) -> np.ndarray:
    """Indices whose Bhattacharyya parameter is strictly below ``threshold``.

    Returns a sorted array of 0-based indices; strict inequality, so a
    threshold of zero yields the empty set.
    """
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    return np.flatnonzero(table.e < threshold)


def capacity_sum(table: BitChannelTable, indices: Iterable[int]) -> float:
    """Sum of bit-channel capacities ``1 - e[i]`` over an index set."""
    idx = np.asarray(list(indices), dtype=np.int64)
    if idx.size == 0:
        return 0.0
    if idx.min() < 0 or idx.max() >= table.n:
        raise ValueError("index out of range")
    return float(np.sum(1.0 - table.e[idx]))


def check_degradation_nesting(main: BitChannelTable, wiretap: BitChannelTable,
                              threshold: float) -> bool:
    """Whether the wiretap good set is contained in the main good set.

    True for degraded wiretap configurations (wiretap erasure >= main
    erasure); advisory only, so non-degraded configurations simply report
    the actual containment.
    """
    if main.n != wiretap.n:
        raise ValueError(f"block length mismatch: {main.n} != {wiretap.n}")
    gw = good_set(wiretap, threshold)
    gm = good_set(main, threshold)
    return bool(np.all(np.isin(gw, gm)))
