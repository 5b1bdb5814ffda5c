"""Leakage analysis for secrecy codes over erasure wiretap channels.

The secrecy metric is the mutual information ``I(U; Z)`` between the
``k``-bit message and the eavesdropper's observation, in bits.  Four
routes to it are provided, in decreasing order of cost:

**Exact joint-distribution oracle** (:func:`brute_force_mi`)

    Enumerates messages, randomness, and erasure patterns and computes
    ``I(U; Z)`` from the joint probability table.  Feasible only for tiny
    codes (``n <= 8``); exists to validate everything else.

**Exact pattern enumeration** (:func:`exact_leakage_enumeration`)

    Over an erasure channel the erasure pattern is a sufficient statistic:
    conditioned on the unerased set ``E``, the leakage is the dimension of
    the intersection of two subspaces of ``F_2^{k+r}``: the span of the
    unerased columns of the code's ``(k+r) x n`` generator and the
    coordinate subspace of the message rows.  Summing over all ``2**n``
    patterns with their probabilities gives the exact leakage for
    ``n <= 16``.

**Monte Carlo estimation** (:func:`mc_leakage`)

    Samples erasure patterns i.i.d. and averages the same per-pattern
    subspace-intersection dimension.  Deterministic for a fixed
    ``(seed, trials)`` pair regardless of worker count.

**Closed-form bounds** (:func:`leakage_lower_bound`,
:func:`leakage_upper_bound`, :func:`rearranged_bounds`)

    Computed from the wiretap bit-channel capacities alone:

        max(sum_A C_i + sum_R C_i - r, 0)  <=  I(U;Z)  <=  min(sum_{A u B} C_i, k)

    The lower bound assumes a uniform message.  The rearranged form
    rewrites both bounds around the code's gap to capacity,
    ``n (C - r/n)``, using the identity ``sum_i C_i = n C``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Tuple

import numpy as np

from .bec import BecParam, BitChannelTable, capacity_sum, evolve
from .gf2 import BitMatrix, intersection_dim, polar_transform
from .secrecy import SecrecyPartition

__all__ = [
    "LeakageBounds",
    "McEstimate",
    "TooLargeError",
    "InconsistentTableError",
    "leakage_upper_bound",
    "leakage_lower_bound",
    "leakage_bounds",
    "rearranged_bounds",
    "exact_leakage_enumeration",
    "pattern_leakage_dim",
    "mc_leakage",
    "brute_force_mi",
    "conditional_mi_check",
]

_MC_CHUNK = 1024  # trials per RNG stream; fixed so results never depend on threading


class TooLargeError(ValueError):
    """Raised when an exact-enumeration input exceeds its size limit."""


class InconsistentTableError(ValueError):
    """Raised when a bit-channel table contradicts its stated capacity."""


@dataclass(frozen=True)
class LeakageBounds:
    """Lower/upper leakage bounds in bits for a ``k``-bit message.

    The direct sum-form bounds satisfy ``0 <= lower <= upper <= k``; the
    raw rearranged forms may fall outside that range, so :meth:`clamped`
    intersects with it.
    """

    lower: float
    upper: float
    k: int

    def clamped(self) -> "LeakageBounds":
        return LeakageBounds(max(self.lower, 0.0), min(self.upper, float(self.k)),
                             self.k)


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo mean with its standard error and reproducibility handles."""

    mean: float
    stderr: float
    trials: int
    seed: int


def _check_table(p: SecrecyPartition, table: BitChannelTable) -> None:
    if table.n != p.n:
        raise ValueError(f"table length {table.n} does not match partition n={p.n}")


def leakage_upper_bound(p: SecrecyPartition, wiretap: BitChannelTable) -> float:
    """``min(sum of wiretap bit-channel capacities outside R, k)``."""
    _check_table(p, wiretap)
    return min(capacity_sum(wiretap, p.A + p.B), float(p.k))


def leakage_lower_bound(p: SecrecyPartition, wiretap: BitChannelTable) -> float:
    """``max(sum_A C_i + sum_R C_i - r, 0)``; assumes a uniform message."""
    _check_table(p, wiretap)
    raw = capacity_sum(wiretap, p.A) + capacity_sum(wiretap, p.R) - p.r
    return max(raw, 0.0)


def leakage_bounds(p: SecrecyPartition,
                   wiretap: BitChannelTable) -> LeakageBounds:
    """Both sum-form bounds as one bracket."""
    return LeakageBounds(leakage_lower_bound(p, wiretap),
                         leakage_upper_bound(p, wiretap), p.k)


def rearranged_bounds(p: SecrecyPartition, wiretap: BitChannelTable,
                      C: float) -> LeakageBounds:
    """Bounds rewritten around the gap-to-capacity term ``n (C - r/n)``.

        n (C - r/n) - sum_B C_i  <=  I(U;Z)  <=  n (C - r/n) + sum_R (1 - C_i)

    Values are returned unclamped: the lower expression equals the raw
    (unclamped) lower-bound sum exactly, and the upper equals the raw
    upper-bound sum.  Raises :class:`InconsistentTableError` when the
    table's capacities do not sum to ``n * C`` within 1e-6.
    """
    _check_table(p, wiretap)
    total = capacity_sum(wiretap, range(p.n))
    if abs(total - p.n * C) > 1e-6:
        raise InconsistentTableError(
            f"sum of bit-channel capacities {total!r} != n*C = {p.n * C!r}")
    base = p.n * (C - p.r / p.n)
    lower = base - capacity_sum(wiretap, p.B)
    upper = base + (p.r - capacity_sum(wiretap, p.R))
    return LeakageBounds(lower, upper, p.k)


# ----------------------------------------------------------------------
# Exact per-pattern leakage via subspace intersections
# ----------------------------------------------------------------------


def _secrecy_generator(p: SecrecyPartition) -> Tuple[np.ndarray, np.ndarray]:
    """Generator restricted to the non-frozen rows, plus message-row positions.

    Returns ``(g, a_pos)`` where ``g`` is the ``(k+r) x n`` generator with
    rows ordered by ascending index over ``A | R``, and ``a_pos`` marks
    which of those rows carry message bits.
    """
    rows = np.asarray(sorted(p.A + p.R), dtype=np.int64)
    full = polar_transform(np.eye(p.n, dtype=np.uint8))
    a_pos = np.isin(rows, np.asarray(p.A, dtype=np.int64))
    return full[rows], a_pos


def _column_bits(g: np.ndarray) -> list:
    """Each generator column as an integer over the non-frozen row coordinates."""
    out = []
    for j in range(g.shape[1]):
        v = 0
        for b in np.flatnonzero(g[:, j]):
            v |= 1 << int(b)
        out.append(v)
    return out


def pattern_leakage_dim(p: SecrecyPartition, unerased: Iterable[int]) -> int:
    """Leakage (in bits) of one erasure pattern, by subspace intersection.

    The observation with unerased set ``E`` pins down exactly
    ``dim(span(columns of the generator in E) ^ message-coordinate
    subspace)`` message bits.  Computed with the generic rank arithmetic
    from :mod:`wiretap_polar.gf2`.
    """
    g, a_pos = _secrecy_generator(p)
    cols = list(unerased)
    if p.k == 0 or not cols:
        return 0
    dim = g.shape[0]
    span_rows = BitMatrix.from_dense(g[:, cols].T)
    idx_rows = BitMatrix([1 << int(i) for i in np.flatnonzero(a_pos)],
                         p.k, dim)
    return intersection_dim(span_rows, idx_rows)


@lru_cache(maxsize=16)
def _pattern_dims(p: SecrecyPartition) -> np.ndarray:
    """Leakage dimension for every erasure pattern of an ``n <= 16`` code.

    Index ``t`` is the pattern whose erased set is the bit set of ``t``.
    """
    n = p.n
    g, a_pos = _secrecy_generator(p)
    dims = np.zeros(1 << n, dtype=np.int16)
    if p.k == 0:
        return dims
    col_bits = _column_bits(g)
    total_dim = g.shape[0]
    idx_rows = BitMatrix([1 << int(i) for i in np.flatnonzero(a_pos)],
                         p.k, total_dim)
    for t in range(1 << n):
        cols = [col_bits[j] for j in range(n) if not (t >> j) & 1]
        if not cols:
            continue
        span_rows = BitMatrix(cols, len(cols), total_dim)
        dims[t] = intersection_dim(span_rows, idx_rows)
    return dims


def _pattern_weights(n: int, erasure: float) -> np.ndarray:
    """i.i.d. pattern probabilities, indexed like :func:`_pattern_dims`."""
    counts = np.zeros(1 << n, dtype=np.int64)
    for t in range(1, 1 << n):
        counts[t] = counts[t >> 1] + (t & 1)
    with np.errstate(divide="ignore"):
        return (erasure ** counts) * ((1.0 - erasure) ** (n - counts))


def exact_leakage_enumeration(p: SecrecyPartition, wiretap: BecParam) -> float:
    """Exact leakage by summing the per-pattern dimension over all patterns.

    Groups the eavesdropper's output alphabet by erasure pattern (the
    pattern is a sufficient statistic over an erasure channel), so the
    ``3**n``-ary alphabet collapses to ``2**n`` terms.  Limited to
    ``n <= 16``.
    """
    if p.n > 16:
        raise TooLargeError(f"pattern enumeration needs n <= 16, got {p.n}")
    dims = _pattern_dims(p)
    w = _pattern_weights(p.n, wiretap.erasure)
    return float(np.dot(w, dims))


# ----------------------------------------------------------------------
# Monte Carlo estimation
# ----------------------------------------------------------------------


def _dim_above_split(col_bits, split: int, total: int) -> int:
    """Number of elimination pivots at coordinates >= split.

    Inserting the column vectors into a lowest-set-bit pivot basis, the
    pivots below ``split`` count the rank of the projection onto the low
    coordinates, so the pivots at or above ``split`` count
    ``rank(M) - rank(M_low)``, the intersection dimension when the low
    coordinates are the randomness rows.
    """
    basis = [0] * total
    filled = 0
    above = 0
    for x in col_bits:
        while x:
            piv = (x & -x).bit_length() - 1
            held = basis[piv]
            if held:
                x ^= held
            else:
                basis[piv] = x
                filled += 1
                if piv >= split:
                    above += 1
                break
        if filled == total:
            break
    return above


def _mc_columns(p: SecrecyPartition) -> list:
    """Generator columns packed with randomness rows in the low bits."""
    g, a_pos = _secrecy_generator(p)
    perm = np.concatenate([np.flatnonzero(~a_pos), np.flatnonzero(a_pos)])
    return _column_bits(g[perm])


def _mc_chunk(col_bits, n: int, erasure: float, seed: int, chunk: int,
              count: int, split: int, total: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed,
                                                       spawn_key=(chunk,)))
    erased = rng.random((count, n)) < erasure
    dims = np.empty(count, dtype=np.int64)
    for t in range(count):
        keep = np.flatnonzero(~erased[t])
        dims[t] = _dim_above_split([col_bits[j] for j in keep], split, total)
    return dims


def mc_leakage(p: SecrecyPartition, wiretap: BecParam, trials: int, seed: int,
               threads: int = 1) -> McEstimate:
    """Monte Carlo leakage estimate over random erasure patterns.

    Parameters
    ----------
    p : SecrecyPartition
        The code whose leakage is estimated.
    wiretap : BecParam
        Eavesdropper channel; positions erase i.i.d. with its erasure
        probability.
    trials : int
        Number of sampled patterns (>= 1).
    seed : int
        Base seed.  Trials are grouped into fixed-size chunks, each drawn
        from a stream derived from ``(seed, chunk index)``, so the result
        is bit-identical for equal ``(seed, trials)`` no matter how many
        workers run.
    threads : int
        Worker cap for evaluating chunks; never affects the result.

    Returns
    -------
    McEstimate
        Sample mean of the per-pattern intersection dimension, its
        standard error (sample std / sqrt(trials)), and the inputs.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    col_bits = _mc_columns(p)
    total = p.k + p.r
    split = p.r
    bounds_list = [(c, min(_MC_CHUNK, trials - c * _MC_CHUNK))
                   for c in range((trials + _MC_CHUNK - 1) // _MC_CHUNK)]

    def run(args):
        chunk, count = args
        return _mc_chunk(col_bits, p.n, wiretap.erasure, seed, chunk, count,
                         split, total)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, bounds_list))
    else:
        parts = [run(a) for a in bounds_list]
    dims = np.concatenate(parts)
    mean = float(np.mean(dims))
    stderr = 0.0 if trials == 1 else float(np.std(dims, ddof=1) / math.sqrt(trials))
    return McEstimate(mean=mean, stderr=stderr, trials=trials, seed=seed)


# ----------------------------------------------------------------------
# Joint-distribution oracles
# ----------------------------------------------------------------------


def _input_codewords(p: SecrecyPartition) -> np.ndarray:
    """Codewords of every (message, randomness) pair.

    Row index is ``u_id * 2**r + e_id`` with bit ``t`` of each id mapped to
    the ``t``-th sorted index of its set.
    """
    n_inputs = 1 << (p.k + p.r)
    v = np.zeros((n_inputs, p.n), dtype=np.uint8)
    ids = np.arange(n_inputs)
    for t, a in enumerate(p.A):
        v[:, a] = (ids >> (p.r + p.k - 1 - t)) & 1
    for t, rr in enumerate(p.R):
        v[:, rr] = (ids >> (p.r - 1 - t)) & 1
    return polar_transform(v)


def _mi_from_counts(counts: np.ndarray) -> float:
    """Mutual information in bits from a joint count table."""
    total = counts.sum()
    pu = counts.sum(axis=1, keepdims=True)
    pz = counts.sum(axis=0, keepdims=True)
    nz = counts > 0
    ratio = counts[nz] * total / (pu @ pz)[nz]
    return float(np.sum(counts[nz] * np.log2(ratio)) / total)


@lru_cache(maxsize=32)
def _pattern_mis(p: SecrecyPartition) -> np.ndarray:
    """Exact ``I(U; Z | pattern)`` for every erasure pattern (tiny codes only)."""
    n = p.n
    x = _input_codewords(p)
    n_inputs = x.shape[0]
    u_ids = np.arange(n_inputs) >> p.r
    mis = np.zeros(1 << n, dtype=np.float64)
    for t in range(1 << n):
        visible = [j for j in range(n) if not (t >> j) & 1]
        if not visible or p.k == 0:
            continue
        weights = 1 << np.arange(len(visible))
        z_ids = x[:, visible].astype(np.int64) @ weights
        counts = np.zeros((1 << p.k, 1 << len(visible)), dtype=np.int64)
        np.add.at(counts, (u_ids, z_ids), 1)
        mis[t] = _mi_from_counts(counts)
    return mis


def brute_force_mi(p: SecrecyPartition, wiretap: BecParam) -> float:
    """Exact ``I(U; Z)`` from the joint distribution, with no rank arithmetic.

    The message and randomness are uniform and independent; the channel
    erases each position i.i.d.  Mutual information is accumulated from
    probability tables over the eavesdropper's output grouped by erasure
    pattern, entirely independent of the subspace-intersection route.
    Limited to ``n <= 8`` and ``k + r <= 8``.
    """
    if p.n > 8 or p.k + p.r > 8:
        raise TooLargeError(
            f"joint enumeration needs n <= 8 and k + r <= 8, got "
            f"n={p.n}, k+r={p.k + p.r}")
    mis = _pattern_mis(p)
    w = _pattern_weights(p.n, wiretap.erasure)
    return float(np.dot(w, mis))


def conditional_mi_check(D: Iterable[int], wiretap: BecParam,
                         n: int) -> Tuple[float, float]:
    """Exact ``I(V_D; Z | V_{D^c})`` versus the capacity sum over ``D``.

    The full input vector is uniform.  Both sides are returned so callers
    can assert ``lhs >= rhs`` (up to float tolerance); the right-hand side
    is ``sum_{i in D} C_i`` from the evolved table.  Limited to ``n <= 6``.
    """
    if n > 6:
        raise TooLargeError(f"conditional enumeration needs n <= 6, got {n}")
    if n <= 0 or (n & (n - 1)) != 0:
        raise ValueError(f"n must be a power of two, got {n}")
    d = sorted(set(int(i) for i in D))
    if d and (d[0] < 0 or d[-1] >= n):
        raise ValueError("D index out of range")
    m = n.bit_length() - 1
    dc = [i for i in range(n) if i not in d]

    v_all = ((np.arange(1 << n)[:, None] >> np.arange(n)[None, :]) & 1).astype(np.uint8)
    x_all = polar_transform(v_all)
    d_ids = v_all[:, d].astype(np.int64) @ (1 << np.arange(len(d))) if d else \
        np.zeros(1 << n, dtype=np.int64)
    dc_ids = v_all[:, dc].astype(np.int64) @ (1 << np.arange(len(dc))) if dc else \
        np.zeros(1 << n, dtype=np.int64)

    eps = wiretap.erasure
    lhs = 0.0
    for t in range(1 << n):
        erased = [j for j in range(n) if (t >> j) & 1]
        visible = [j for j in range(n) if not (t >> j) & 1]
        w = eps ** len(erased) * (1.0 - eps) ** len(visible)
        if w == 0.0 or not d:
            continue
        if visible:
            z_ids = x_all[:, visible].astype(np.int64) @ (1 << np.arange(len(visible)))
        else:
            z_ids = np.zeros(1 << n, dtype=np.int64)
        acc = 0.0
        for g in range(1 << len(dc)):
            sel = dc_ids == g
            counts = np.zeros((1 << len(d), int(z_ids[sel].max()) + 1),
                              dtype=np.int64)
            np.add.at(counts, (d_ids[sel], z_ids[sel]), 1)
            acc += _mi_from_counts(counts)
        lhs += w * acc / (1 << len(dc))
    rhs = capacity_sum(evolve(wiretap, m), d)
    return lhs, rhs
