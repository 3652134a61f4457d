"""Command line front end for rendering benchmark charts."""

from __future__ import annotations

import argparse
import sys

from .data import SchemaError
from .render import PlotSpec, render


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="v2iplots",
        description="Render benchmark CSV files into a timing chart.",
    )
    parser.add_argument("csv", nargs="+", help="benchmark CSV file(s) to plot")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--title", default="benchmark timings")
    parser.add_argument("--x-label", default="batch size")
    parser.add_argument("--y-label", default="latency (ms)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    spec = PlotSpec(
        csv_paths=tuple(args.csv),
        out_path=args.out,
        title=args.title,
        x_label=args.x_label,
        y_label=args.y_label,
    )
    try:
        out = render(spec)
    except (SchemaError, OSError) as exc:
        print(f"v2iplots: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 0


def entry():
    raise SystemExit(main())
