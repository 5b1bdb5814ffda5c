"""Render leakage curves and scaling log-log plots from wiretap-polar CSV files.

Display-only: every plotted number comes straight from the input file (the
one exception is the slope annotation on the log-log plot, which the
schema asks for).  Rendering is deterministic: fixed figure geometry,
text kept as text, and no timestamps in the output, so the same CSV yields
the same bytes.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Dict, List, Optional

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "wiretap-polar-plots"
matplotlib.rcParams["svg.fonttype"] = "none"

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["SchemaError", "read_csv", "render", "render_leakage_curves",
           "render_scaling_loglog"]

LEAKAGE_REQUIRED = ["wiretap_eps", "lb_norm", "ub_norm"]
LEAKAGE_MC = ["mc_mean_norm", "mc_stderr_norm"]
SCALING_REQUIRED = ["n", "capacity_gap", "ub_norm"]

_FIGSIZE = (7.0, 4.6)
_DPI = 120


class SchemaError(ValueError):
    """Input file does not match the expected column schema."""


@dataclass
class Table:
    columns: List[str]
    rows: List[Dict[str, str]]


def read_csv(path: str) -> Table:
    """Load a wiretap-polar CSV, skipping ``#`` comment lines."""
    with open(path, newline="") as fh:
        lines = [line for line in fh if not line.startswith("#")]
    reader = csv.DictReader(lines)
    if reader.fieldnames is None:
        raise SchemaError("empty input: no header row")
    rows = list(reader)
    if not rows:
        raise SchemaError("no data rows")
    return Table(columns=list(reader.fieldnames), rows=rows)


def _require_columns(table: Table, needed) -> None:
    for col in needed:
        if col not in table.columns:
            raise SchemaError(f"missing required column: {col}")


def _floats(table: Table, col: str) -> np.ndarray:
    return np.array([float(row[col]) for row in table.rows])


def _has_values(table: Table, col: str) -> bool:
    return col in table.columns and all(row[col] not in ("", None)
                                        for row in table.rows)


def _save(fig, out_path: str) -> None:
    if out_path.lower().endswith(".svg"):
        fig.savefig(out_path, format="svg", metadata={"Date": None})
    else:
        fig.savefig(out_path)
    plt.close(fig)


def render_leakage_curves(in_path: str, out_path: str,
                          title: Optional[str] = None) -> None:
    """Normalized leakage bounds, plus the Monte Carlo series when present.

    Draws the lower and upper bound curves against the wiretap erasure; if
    the MC columns carry values, adds the estimate with a +/-3-standard-
    error band.  The y axis is pinned to [0, 1].
    """
    table = read_csv(in_path)
    _require_columns(table, LEAKAGE_REQUIRED)
    eps = _floats(table, "wiretap_eps")
    lb = np.clip(_floats(table, "lb_norm"), 0.0, 1.0)
    ub = np.clip(_floats(table, "ub_norm"), 0.0, 1.0)

    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    ax.plot(eps, lb, "s-", color="tab:blue", label="lower bound")
    ax.plot(eps, ub, "o-", color="tab:red", label="upper bound")
    if all(_has_values(table, c) for c in LEAKAGE_MC):
        mc = _floats(table, "mc_mean_norm")
        se = _floats(table, "mc_stderr_norm")
        ax.fill_between(eps, np.clip(mc - 3 * se, 0, 1),
                        np.clip(mc + 3 * se, 0, 1), color="tab:green",
                        alpha=0.25, label="Monte Carlo +/-3 stderr")
        ax.plot(eps, mc, "d--", color="tab:green", label="Monte Carlo estimate")
    ax.set_xlabel("wiretap erasure probability")
    ax.set_ylabel("normalized leakage  I(U;Z)/k")
    ax.set_ylim(0.0, 1.0)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best")
    if title:
        ax.set_title(title)
    _save(fig, out_path)


def render_scaling_loglog(in_path: str, out_path: str,
                          title: Optional[str] = None) -> None:
    """Gap to capacity and normalized leakage bound versus n, log-log.

    Annotates each series with its fitted log-log slope.
    """
    table = read_csv(in_path)
    _require_columns(table, SCALING_REQUIRED)
    n = _floats(table, "n")
    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    for col, marker, color in (("capacity_gap", "o-", "tab:blue"),
                               ("ub_norm", "s-", "tab:red")):
        vals = _floats(table, col)
        use = vals > 0
        slope = np.polyfit(np.log(n[use]), np.log(vals[use]), 1)[0] \
            if np.count_nonzero(use) >= 2 else float("nan")
        ax.loglog(n[use], vals[use], marker, color=color,
                  label=f"{col} (slope {slope:.3f})")
    ax.set_xlabel("block length n")
    ax.set_ylabel("value")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(loc="best")
    if title:
        ax.set_title(title)
    _save(fig, out_path)


_KINDS = {
    "leakage-curves": render_leakage_curves,
    "scaling-loglog": render_scaling_loglog,
}


def render(kind: str, in_path: str, out_path: str,
           title: Optional[str] = None) -> None:
    """Dispatch on the plot kind (``leakage-curves`` or ``scaling-loglog``)."""
    try:
        fn = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown plot kind: {kind!r}")
    fn(in_path, out_path, title)
