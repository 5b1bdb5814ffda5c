"""Command-line front end.

Subcommands construct secrecy codes, evaluate leakage bounds, run the
Monte Carlo and exact leakage estimators, simulate the legitimate
receiver, and run scaling sweeps.  Output goes to one CSV or JSON file
whose first line (CSV) or ``config`` key (JSON) records the semantic
configuration; identical configurations produce byte-identical files, and
``--threads`` never changes results.

Exit codes: 0 success, 2 usage error, 3 infeasible configuration,
1 other errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Sequence

import numpy as np

from .bec import BecParam, evolve
from .codec import ERASED, sc_decode_batch, union_bound_pe
from .gf2 import polar_transform
from .leakage import (exact_leakage_enumeration, leakage_lower_bound,
                      leakage_upper_bound, mc_leakage)
from .scaling import above_capacity_sweep, sweep
from .secrecy import (InfeasibleConfigError, WiretapConfig, build_partition,
                      build_partition_above_capacity)

DEFAULT_SEED = 123456789

LEAKAGE_COLUMNS = ["wiretap_eps", "k", "r", "n", "lb_norm", "ub_norm",
                   "mc_mean_norm", "mc_stderr_norm"]
SCALING_COLUMNS = ["n", "secrecy_rate", "capacity_gap", "lb_norm", "ub_norm",
                   "pe_bound"]
SIMULATE_COLUMNS = ["n", "trials", "failures", "failure_rate", "pe_bound"]


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


def _parse_grid(spec: str) -> List[float]:
    """Parse ``start:stop:step`` into an inclusive grid."""
    try:
        start, stop, step = (float(t) for t in spec.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"grid must be start:stop:step, got {spec!r}")
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError("grid needs start <= stop and step > 0")
    count = int((stop - start) / step + 1e-9) + 1
    return [start + i * step for i in range(count)]


def _parse_m_list(spec: str) -> List[int]:
    try:
        return [int(t) for t in spec.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"m-list must be comma-separated ints")


def _config_string(args: argparse.Namespace) -> str:
    """Canonical semantic configuration (omits output path and threads)."""
    skip = {"out", "threads", "func"}
    parts = [args.command]
    for key in sorted(vars(args)):
        if key in skip or key == "command":
            continue
        val = getattr(args, key)
        if val is None:
            continue
        if isinstance(val, list):
            val = ",".join(_fmt(v) for v in val)
        parts.append(f"{key}={_fmt(val) if isinstance(val, float) else val}")
    return " ".join(parts)


def _write_rows(path: str, fmt: str, config: str, columns: Sequence[str],
                rows: Sequence[Sequence]) -> None:
    if fmt == "csv":
        lines = [f"# config: {config}", ",".join(columns)]
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "config": config,
            "rows": [
                {c: (None if v is None else (int(v) if isinstance(v, (int, np.integer)) else float(v)))
                 for c, v in zip(columns, row)}
                for row in rows
            ],
        }
        text = json.dumps(payload, indent=2) + "\n"
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def _resolve_seed(args: argparse.Namespace) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    return int(os.environ.get("WPL_SEED", DEFAULT_SEED))


def _leakage_rows(args, estimator) -> List[List]:
    """One row per evaluation erasure; estimator fills the MC columns."""
    n = 1 << args.m
    grid = args.wiretap_eps_grid or [args.wiretap_eps]
    rows = []
    for eps in grid:
        design_eps = args.wiretap_eps if args.wiretap_eps is not None else eps
        cfg = WiretapConfig(main=BecParam(args.main_eps),
                            wiretap=BecParam(design_eps), n=n,
                            target_pe=args.pe)
        part = build_partition(cfg)
        table = evolve(BecParam(eps), args.m)
        k = part.k
        lb = leakage_lower_bound(part, table) / k if k else 0.0
        ub = leakage_upper_bound(part, table) / k if k else 0.0
        mc_mean, mc_err = estimator(part, eps, k)
        rows.append([eps, k, part.r, n, lb, ub, mc_mean, mc_err])
    return rows


def _cmd_construct(args) -> str:
    n = 1 << args.m
    cfg = WiretapConfig(main=BecParam(args.main_eps),
                        wiretap=BecParam(args.wiretap_eps), n=n,
                        target_pe=args.pe)
    if args.delta is not None:
        part = build_partition_above_capacity(cfg, args.delta)
    else:
        part = build_partition(cfg)
    payload = {
        "n": part.n,
        "A": [i + 1 for i in part.A],
        "R": [i + 1 for i in part.R],
        "B": [i + 1 for i in part.B],
        "config": _config_string(args),
    }
    with open(args.out, "w", encoding="ascii", newline="\n") as fh:
        fh.write(json.dumps(payload, indent=2) + "\n")
    return f"construct: n={part.n} k={part.k} r={part.r} -> {args.out}"


def _cmd_bounds(args) -> str:
    rows = _leakage_rows(args, lambda part, eps, k: (None, None))
    _write_rows(args.out, args.format, _config_string(args), LEAKAGE_COLUMNS, rows)
    return f"bounds: {len(rows)} rows -> {args.out}"


def _cmd_mc_leakage(args) -> str:
    seed = _resolve_seed(args)
    args.seed = seed

    def estimator(part, eps, k):
        est = mc_leakage(part, BecParam(eps), args.trials, seed,
                         threads=args.threads)
        if k == 0:
            return 0.0, 0.0
        return est.mean / k, est.stderr / k

    rows = _leakage_rows(args, estimator)
    _write_rows(args.out, args.format, _config_string(args), LEAKAGE_COLUMNS, rows)
    return f"mc-leakage: {len(rows)} rows, {args.trials} trials -> {args.out}"


def _cmd_exact_leakage(args) -> str:
    def estimator(part, eps, k):
        val = exact_leakage_enumeration(part, BecParam(eps))
        return (val / k if k else 0.0), 0.0

    rows = _leakage_rows(args, estimator)
    _write_rows(args.out, args.format, _config_string(args), LEAKAGE_COLUMNS, rows)
    return f"exact-leakage: {len(rows)} rows -> {args.out}"


def _cmd_simulate(args) -> str:
    seed = _resolve_seed(args)
    args.seed = seed
    n = 1 << args.m
    cfg = WiretapConfig(main=BecParam(args.main_eps),
                        wiretap=BecParam(args.wiretap_eps), n=n,
                        target_pe=args.pe)
    part = build_partition(cfg)
    active = list(part.A + part.R)
    frozen_mask = np.zeros(n, dtype=bool)
    frozen_mask[list(part.B)] = True
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed))
    failures = 0
    done = 0
    while done < args.trials:
        count = min(16384, args.trials - done)
        v = np.zeros((count, n), dtype=np.uint8)
        v[:, active] = rng.integers(0, 2, size=(count, len(active)),
                                    dtype=np.uint8)
        x = polar_transform(v)
        y = np.where(rng.random((count, n)) < args.main_eps, ERASED, x)
        _, first_fail = sc_decode_batch(y, frozen_mask,
                                        np.zeros(n, dtype=np.uint8))
        failures += int(np.count_nonzero(first_fail != n))
        done += count
    pe_bound = union_bound_pe(evolve(BecParam(args.main_eps), args.m), active)
    rows = [[n, args.trials, failures, failures / args.trials, pe_bound]]
    _write_rows(args.out, args.format, _config_string(args), SIMULATE_COLUMNS, rows)
    return (f"simulate: {failures}/{args.trials} failures "
            f"(bound {pe_bound:.3e}) -> {args.out}")


def _scaling_rows(points) -> List[List]:
    return [[pt.n, pt.secrecy_rate, pt.capacity_gap, pt.leakage_lower_norm,
             pt.leakage_upper_norm, pt.pe_bound] for pt in points]


def _cmd_scaling(args) -> str:
    points = sweep(BecParam(args.main_eps), BecParam(args.wiretap_eps),
                   args.pe, args.m_list)
    _write_rows(args.out, args.format, _config_string(args), SCALING_COLUMNS,
                _scaling_rows(points))
    return f"scaling: {len(points)} rows -> {args.out}"


def _cmd_above_capacity(args) -> str:
    points = above_capacity_sweep(BecParam(args.main_eps),
                                  BecParam(args.wiretap_eps), args.pe,
                                  args.delta, args.m_list)
    _write_rows(args.out, args.format, _config_string(args), SCALING_COLUMNS,
                _scaling_rows(points))
    return f"above-capacity: {len(points)} rows -> {args.out}"


def _add_common(sub, m=True, wiretap_single=True, grid=False, pe=True):
    sub.add_argument("--main-eps", type=float, required=True, dest="main_eps")
    if m:
        sub.add_argument("--m", type=int, required=True)
    if wiretap_single:
        sub.add_argument("--wiretap-eps", type=float, dest="wiretap_eps")
    if grid:
        sub.add_argument("--wiretap-eps-grid", type=_parse_grid,
                         dest="wiretap_eps_grid")
    if pe:
        sub.add_argument("--pe", type=float, required=True)
    sub.add_argument("--out", required=True)
    sub.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wpl",
        description="Polar secrecy codes over erasure wiretap channels")
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("construct", help="build a partition as JSON")
    _add_common(s, grid=False)
    s.add_argument("--delta", type=float)
    s.set_defaults(func=_cmd_construct)

    s = subs.add_parser("bounds", help="leakage bounds over an erasure grid")
    _add_common(s, grid=True)
    s.set_defaults(func=_cmd_bounds)

    s = subs.add_parser("mc-leakage", help="Monte Carlo leakage estimate")
    _add_common(s, grid=True)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int)
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=_cmd_mc_leakage)

    s = subs.add_parser("exact-leakage",
                        help="exact enumeration (n <= 16); fills the mc columns")
    _add_common(s, grid=True)
    s.set_defaults(func=_cmd_exact_leakage)

    s = subs.add_parser("simulate", help="legitimate-receiver decode trials")
    _add_common(s)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=_cmd_simulate)

    s = subs.add_parser("scaling", help="threshold-construction sweep")
    _add_common(s, m=False)
    s.add_argument("--m-list", type=_parse_m_list, required=True, dest="m_list")
    s.set_defaults(func=_cmd_scaling)

    s = subs.add_parser("above-capacity", help="shrunken-randomness sweep")
    _add_common(s, m=False)
    s.add_argument("--m-list", type=_parse_m_list, required=True, dest="m_list")
    s.add_argument("--delta", type=float, required=True)
    s.set_defaults(func=_cmd_above_capacity)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("bounds", "mc-leakage", "exact-leakage"):
        if args.wiretap_eps is None and args.wiretap_eps_grid is None:
            parser.error("need --wiretap-eps and/or --wiretap-eps-grid")
    elif args.command in ("construct", "simulate", "scaling", "above-capacity"):
        if args.wiretap_eps is None:
            parser.error("--wiretap-eps is required")
    try:
        summary = args.func(args)
    except InfeasibleConfigError as exc:
        print(f"infeasible configuration: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(summary)
    return 0


if __name__ == "__main__":
    sys.exit(main())
