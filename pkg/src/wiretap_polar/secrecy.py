"""Secrecy partitions and the three-set wiretap encoder/decoder.

A secrecy code splits the ``n`` input positions into a message set ``A``
(size ``k``), a randomness set ``R`` (size ``r``), and a frozen set ``B``
(pinned to zero).  The encoder places the message on ``A``, fresh uniform
bits on ``R``, zeros on ``B``, and applies the polar transform.  The
legitimate receiver SC-decodes ``A | R`` and discards the ``R`` bits.

Index sets are kept 0-based and sorted internally; the JSON serialization
uses 1-based sorted arrays.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .bec import BecParam, evolve, good_set
from .codec import DecodeResult, sc_decode_batch
from .gf2 import polar_transform

__all__ = [
    "SecrecyPartition",
    "WiretapConfig",
    "InfeasibleConfigError",
    "build_partition",
    "build_partition_above_capacity",
    "secrecy_encode",
    "random_randomness",
    "bob_decode",
    "partition_to_json",
    "partition_from_json",
]


class InfeasibleConfigError(ValueError):
    """Raised when a requested partition cannot be built."""


@dataclass(frozen=True)
class SecrecyPartition:
    """Disjoint message/random/frozen index sets covering ``range(n)``."""

    n: int
    A: Tuple[int, ...]
    R: Tuple[int, ...]
    B: Tuple[int, ...]

    def __post_init__(self):
        a, r, b = (tuple(sorted(s)) for s in (self.A, self.R, self.B))
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "R", r)
        object.__setattr__(self, "B", b)
        union = set(a) | set(r) | set(b)
        if len(a) + len(r) + len(b) != self.n or union != set(range(self.n)):
            raise ValueError("A, R, B must be disjoint and cover range(n)")

    @property
    def k(self) -> int:
        return len(self.A)

    @property
    def r(self) -> int:
        return len(self.R)

    @property
    def secrecy_rate(self) -> float:
        return self.k / self.n


@dataclass(frozen=True)
class WiretapConfig:
    """Main/wiretap channel pair with block length and reliability target."""

    main: BecParam
    wiretap: BecParam
    n: int
    target_pe: float

    def __post_init__(self):
        if self.n <= 0 or (self.n & (self.n - 1)) != 0:
            raise ValueError(f"n must be a power of two, got {self.n}")
        if not 0.0 < self.target_pe < 1.0:
            raise ValueError("target_pe must be in (0, 1)")

    @property
    def m(self) -> int:
        return self.n.bit_length() - 1

    def is_degraded(self) -> bool:
        return self.wiretap.erasure >= self.main.erasure

    def secrecy_capacity(self) -> float:
        """Main capacity minus wiretap capacity; negative if non-degraded."""
        return self.main.capacity() - self.wiretap.capacity()


def build_partition(cfg: WiretapConfig) -> SecrecyPartition:
    """Threshold construction: randomness on the wiretap-good set.

    With threshold ``target_pe / n``, ``R`` is the wiretap good set, ``A``
    is the main good set minus ``R``, and ``B`` is the remainder.
    Deterministic.
    """
    thr = cfg.target_pe / cfg.n
    wt = evolve(cfg.wiretap, cfg.m)
    mt = evolve(cfg.main, cfg.m)
    r_set = set(good_set(wt, thr).tolist())
    a_set = set(good_set(mt, thr).tolist()) - r_set
    b_set = set(range(cfg.n)) - r_set - a_set
    return SecrecyPartition(cfg.n, tuple(a_set), tuple(r_set), tuple(b_set))


def build_partition_above_capacity(cfg: WiretapConfig,
                                   delta: float) -> SecrecyPartition:
    """Shrink the randomness set to push the secrecy rate above capacity.

    Starting from :func:`build_partition`, removes ``ceil(n**(1 - 1/delta))``
    indices from ``R`` and adds them to ``A``, so the removed fraction is
    ``n**(-1/delta)``.  The removed indices are those of ``R`` with the
    largest wiretap bit-channel erasure, ties broken toward the smaller
    index.  ``delta`` values above the wiretap scaling exponent (4.714 is
    always safe) keep the weak-secrecy decay intact; ``delta = 1`` is the
    degenerate boundary where exactly one index moves.
    """
    if delta < 1.0:
        raise ValueError("delta must be at least 1")
    base = build_partition(cfg)
    n_prime = math.ceil(cfg.n ** (1.0 - 1.0 / delta))
    if len(base.R) < n_prime:
        raise InfeasibleConfigError(
            f"|R| = {len(base.R)} is smaller than |R'| = {n_prime}")
    wt = evolve(cfg.wiretap, cfg.m)
    r_idx = np.asarray(base.R, dtype=np.int64)
    order = np.lexsort((r_idx, -wt.e[r_idx]))
    removed = set(r_idx[order[:n_prime]].tolist())
    new_r = tuple(i for i in base.R if i not in removed)
    new_a = tuple(sorted(set(base.A) | removed))
    return SecrecyPartition(cfg.n, new_a, new_r, base.B)


def secrecy_encode(u: np.ndarray, e: np.ndarray,
                   p: SecrecyPartition) -> np.ndarray:
    """Encode message ``u`` with randomness ``e``: v_A = u, v_R = e, v_B = 0.

    ``u`` and ``e`` align with the sorted ``A`` and ``R`` index sets.  The
    randomness is supplied by the caller; draw it uniformly (see
    :func:`random_randomness`) to match the code's security analysis.
    """
    u = np.asarray(u, dtype=np.uint8)
    e = np.asarray(e, dtype=np.uint8)
    if u.shape != (p.k,):
        raise ValueError(f"message length must be k = {p.k}")
    if e.shape != (p.r,):
        raise ValueError(f"randomness length must be r = {p.r}")
    v = np.zeros(p.n, dtype=np.uint8)
    v[list(p.A)] = u
    v[list(p.R)] = e
    return polar_transform(v)


def random_randomness(p: SecrecyPartition, seed: Optional[int] = None,
                      rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """Uniform randomness vector of length ``r`` from a seeded generator."""
    if rng is None:
        rng = np.random.default_rng(seed)
    return rng.integers(0, 2, size=p.r, dtype=np.uint8)


def bob_decode(y: np.ndarray, p: SecrecyPartition) -> DecodeResult:
    """Decode the message: SC with ``B`` frozen to zero, then discard ``R``.

    On success the result's ``v`` holds the message bits (aligned with
    sorted ``A``); failures propagate the first undecodable index.
    """
    y = np.asarray(y, dtype=np.uint8)
    if y.shape != (p.n,):
        raise ValueError(f"observation length must be n = {p.n}")
    mask = np.zeros(p.n, dtype=bool)
    mask[list(p.B)] = True
    v, first_fail = sc_decode_batch(y[None, :], mask, np.zeros(p.n, dtype=np.uint8))
    if first_fail[0] != p.n:
        return DecodeResult(ok=False, v=None,
                            first_undecodable=int(first_fail[0]))
    return DecodeResult(ok=True, v=v[0, list(p.A)], first_undecodable=None)


def partition_to_json(p: SecrecyPartition) -> str:
    """Serialize as a JSON object with 1-based sorted index arrays."""
    return json.dumps({
        "n": p.n,
        "A": [i + 1 for i in p.A],
        "R": [i + 1 for i in p.R],
        "B": [i + 1 for i in p.B],
    })


def partition_from_json(text: str) -> SecrecyPartition:
    """Parse the 1-based JSON form back into a partition."""
    obj = json.loads(text)
    return SecrecyPartition(
        n=int(obj["n"]),
        A=tuple(int(i) - 1 for i in obj["A"]),
        R=tuple(int(i) - 1 for i in obj["R"]),
        B=tuple(int(i) - 1 for i in obj["B"]),
    )
