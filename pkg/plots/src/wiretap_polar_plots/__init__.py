"""Plotting front end for wiretap-polar CSV output."""

from .render import (SchemaError, read_csv, render, render_leakage_curves,
                     render_scaling_loglog)

__version__ = "0.1.0"
