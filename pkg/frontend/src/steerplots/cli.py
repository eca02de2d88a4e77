"""Command line entry point: `steerplots render --kind K --in ... --out ...`."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import FIGURE_KINDS, FigureSpec, PlotError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="steerplots", description="Render simulator figures")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one figure from CSV input")
    p.add_argument("--kind", required=True, choices=FIGURE_KINDS)
    p.add_argument(
        "--in",
        dest="inputs",
        action="append",
        required=True,
        type=Path,
        metavar="PATH",
        help="input CSV (repeatable)",
    )
    p.add_argument("--out", required=True, type=Path, help="output image path")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(kind=args.kind, inputs=tuple(args.inputs), output=args.out)
    try:
        render(spec)
    except (PlotError, OSError) as exc:
        print(f"steerplots: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
