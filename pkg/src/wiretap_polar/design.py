"""Design-point helpers: solving channel parameters for target good-set sizes.

The bounds-versus-Monte-Carlo reproduction uses an (n=256, k=56, r=163)
code.  The documented recipe designs it with the threshold construction:
pick the main erasure so the main good set has exactly ``k + r = 219``
indices and the wiretap erasure so the wiretap good set has exactly
``r = 163``, both at threshold ``target_pe / n``.  Degradedness (main
better than wiretap) then follows automatically, and the resulting
partition has exactly the target sizes.
"""

from __future__ import annotations

from .bec import BecParam, evolve, good_set
from .secrecy import InfeasibleConfigError, SecrecyPartition, WiretapConfig, \
    build_partition

__all__ = [
    "solve_erasure_for_good_count",
    "figure_design_config",
    "figure_design_partition",
    "FIG_N",
    "FIG_K",
    "FIG_R",
    "FIG_PE",
]

FIG_N = 256
FIG_K = 56
FIG_R = 163
FIG_PE = 1e-3


def solve_erasure_for_good_count(m: int, threshold: float, target: int,
                                 iters: int = 80) -> float:
    """Largest-ish erasure whose good set at ``threshold`` has ``target`` indices.

    The good-set size is non-increasing in the erasure probability, so a
    bisection on [0, 1] converges to the boundary; the returned value is
    the midpoint of the working interval and is verified to achieve the
    target exactly.  Raises :class:`InfeasibleConfigError` when no erasure
    value attains the target (the size steps over it).
    """
    n = 1 << m
    if not 0 <= target <= n:
        raise ValueError(f"target must be in [0, {n}]")
    lo, hi = 0.0, 1.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        count = good_set(evolve(BecParam(mid), m), threshold).size
        if count >= target:
            lo = mid
        else:
            hi = mid
    got = good_set(evolve(BecParam(lo), m), threshold).size
    if got != target:
        raise InfeasibleConfigError(
            f"no erasure gives a good set of exactly {target} (closest: {got})")
    return lo


def figure_design_config(pe: float = FIG_PE) -> WiretapConfig:
    """The documented (n=256, k=56, r=163) design point.

    Solves the main erasure for a 219-index good set and the wiretap
    erasure for a 163-index good set at threshold ``pe / 256``; the
    threshold construction on that channel pair yields k=56, r=163.
    """
    thr = pe / FIG_N
    m = FIG_N.bit_length() - 1
    eps_main = solve_erasure_for_good_count(m, thr, FIG_K + FIG_R)
    eps_wt = solve_erasure_for_good_count(m, thr, FIG_R)
    return WiretapConfig(main=BecParam(eps_main), wiretap=BecParam(eps_wt),
                         n=FIG_N, target_pe=pe)


def figure_design_partition(pe: float = FIG_PE) -> SecrecyPartition:
    """The (k=56, r=163) partition built from :func:`figure_design_config`."""
    p = build_partition(figure_design_config(pe))
    if (p.k, p.r) != (FIG_K, FIG_R):
        raise InfeasibleConfigError(
            f"design recipe produced (k, r) = ({p.k}, {p.r})")
    return p
