"""Plot command: ``plot <kind> --in <csv> --out <file> [--title ...]``."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .render import SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render wiretap-polar CSV output as SVG (default) or PNG")
    parser.add_argument("kind", choices=["leakage-curves", "scaling-loglog"])
    parser.add_argument("--in", dest="in_path", required=True,
                        help="input CSV from the wpl command")
    parser.add_argument("--out", dest="out_path", required=True,
                        help="output image; .svg is the diff-able default")
    parser.add_argument("--title", default=None)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        render(args.kind, args.in_path, args.out_path, args.title)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"{args.kind}: {args.in_path} -> {args.out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
