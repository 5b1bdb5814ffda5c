"""Finite-length scaling sweeps and scaling-exponent fits.

A sweep evaluates the threshold-constructed secrecy code at a list of
block lengths and records, per length: the secrecy rate, the gap to
secrecy capacity, the normalized leakage bounds (rearranged gap form, divided
by ``k``), and the union-bound on the legitimate receiver's SC failure
probability.  :func:`fit_exponent` turns any positive, decaying column of
such records into a power-law fit ``gap ~ alpha * n**(-1/mu)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence

import numpy as np

from .bec import BecParam, evolve, good_set
from .codec import union_bound_pe
from .leakage import rearranged_bounds
from .secrecy import (SecrecyPartition, WiretapConfig, build_partition,
                      build_partition_above_capacity)

__all__ = [
    "ScalingPoint",
    "ExponentFit",
    "sweep",
    "above_capacity_sweep",
    "channel_gap_sweep",
    "fit_exponent",
]

_GAP_FLOOR = 1e-12  # log-domain noise floor; smaller gaps are excluded from fits


@dataclass(frozen=True)
class ScalingPoint:
    """One sweep record at block length ``n``.

    ``capacity_gap`` is the secrecy capacity minus the secrecy rate (so
    above-capacity operation shows up as a negative value).  The leakage
    bound fields are the rearranged-form bounds divided by ``k`` (zero when
    ``k = 0``).
    """

    n: int
    secrecy_rate: float
    capacity_gap: float
    leakage_lower_norm: float
    leakage_upper_norm: float
    pe_bound: float


@dataclass(frozen=True)
class ExponentFit:
    """Power-law fit ``alpha * n**(-1/mu)`` with its RMS log-residual."""

    mu: float
    alpha: float
    residual: float


def _point_from_partition(cfg: WiretapConfig, p: SecrecyPartition) -> ScalingPoint:
    wt = evolve(cfg.wiretap, cfg.m)
    mt = evolve(cfg.main, cfg.m)
    cb = rearranged_bounds(p, wt, cfg.wiretap.capacity())
    if p.k > 0:
        lb_norm, ub_norm = cb.lower / p.k, cb.upper / p.k
    else:
        lb_norm = ub_norm = 0.0
    return ScalingPoint(
        n=cfg.n,
        secrecy_rate=p.secrecy_rate,
        capacity_gap=cfg.secrecy_capacity() - p.secrecy_rate,
        leakage_lower_norm=lb_norm,
        leakage_upper_norm=ub_norm,
        pe_bound=union_bound_pe(mt, p.A + p.R),
    )


def sweep(main: BecParam, wiretap: BecParam, target_pe: float,
          m_list: Iterable[int]) -> List[ScalingPoint]:
    """Threshold-construction sweep over block lengths ``2**m``.

    Points are returned in ascending ``n`` regardless of the input order.
    Memory-bounded to ``n <= 2**22``.
    """
    points = []
    for m in sorted(set(int(m) for m in m_list)):
        if m > 22:
            raise ValueError("block length limited to 2**22")
        cfg = WiretapConfig(main=main, wiretap=wiretap, n=1 << m,
                            target_pe=target_pe)
        points.append(_point_from_partition(cfg, build_partition(cfg)))
    return points


def above_capacity_sweep(main: BecParam, wiretap: BecParam, target_pe: float,
                         delta: float,
                         m_list: Iterable[int]) -> List[ScalingPoint]:
    """Sweep of the shrunken-randomness construction (rate above capacity)."""
    points = []
    for m in sorted(set(int(m) for m in m_list)):
        if m > 22:
            raise ValueError("block length limited to 2**22")
        cfg = WiretapConfig(main=main, wiretap=wiretap, n=1 << m,
                            target_pe=target_pe)
        p = build_partition_above_capacity(cfg, delta)
        points.append(_point_from_partition(cfg, p))
    return points


def channel_gap_sweep(channel: BecParam, target_pe: float,
                      m_list: Iterable[int]) -> List[ScalingPoint]:
    """Single-channel gap-to-capacity sweep: ``C - |good set| / n`` per length.

    The record reuses the sweep schema: ``secrecy_rate`` holds the code
    rate ``|good set| / n``, ``capacity_gap`` the gap to the channel
    capacity, and ``pe_bound`` the union bound over the good set; the
    leakage fields are zero.
    """
    points = []
    for m in sorted(set(int(m) for m in m_list)):
        if m > 22:
            raise ValueError("block length limited to 2**22")
        n = 1 << m
        table = evolve(channel, m)
        good = good_set(table, target_pe / n)
        rate = good.size / n
        points.append(ScalingPoint(
            n=n,
            secrecy_rate=rate,
            capacity_gap=channel.capacity() - rate,
            leakage_lower_norm=0.0,
            leakage_upper_norm=0.0,
            pe_bound=union_bound_pe(table, good),
        ))
    return points


def fit_exponent(points: Sequence[ScalingPoint],
                 field: str = "capacity_gap") -> ExponentFit:
    """Least-squares power-law fit of a sweep column against ``n``.

    Fits a line to ``(log n, log value)``; the slope ``s`` gives
    ``mu = -1/s`` and the intercept gives ``alpha``.  Values at or below
    the 1e-12 noise floor are excluded.  Raises ``ValueError`` for
    non-positive values, fewer than 3 usable points, or a degenerate fit
    (fewer than 2 distinct lengths).
    """
    ns, vals = [], []
    for pt in points:
        v = getattr(pt, field)
        if v <= 0:
            raise ValueError(f"non-positive {field} value {v} at n={pt.n}")
        if v > _GAP_FLOOR:
            ns.append(pt.n)
            vals.append(v)
    if len(vals) < 3:
        raise ValueError("need at least 3 usable points to fit")
    if len(set(ns)) < 2:
        raise ValueError("degenerate fit: all points share one block length")
    log_n = np.log(np.asarray(ns, dtype=np.float64))
    log_v = np.log(np.asarray(vals, dtype=np.float64))
    slope, intercept = np.polyfit(log_n, log_v, 1)
    if slope >= 0:
        raise ValueError("values do not decay with n; no scaling exponent")
    fitted = slope * log_n + intercept
    residual = float(np.sqrt(np.mean((log_v - fitted) ** 2)))
    return ExponentFit(mu=-1.0 / slope, alpha=float(math.exp(intercept)),
                       residual=residual)
