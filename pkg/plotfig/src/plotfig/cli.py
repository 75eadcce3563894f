"""Command line: render one named figure from a directory of CSVs."""

from __future__ import annotations

import argparse
import sys

from .errors import PlotfigError
from .recipes import available_figures, load_recipe
from .render import render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotfig",
        description="Render a named figure from simulation CSV artifacts.",
    )
    parser.add_argument(
        "figure_id",
        choices=available_figures(),
        metavar="figure_id",
        help="one of: " + ", ".join(available_figures()),
    )
    parser.add_argument(
        "--in", dest="in_dir", default=".",
        help="directory holding the input CSVs (default: .)",
    )
    parser.add_argument(
        "--out", dest="out_dir", default=".",
        help="directory receiving the SVG and its data dump (default: .)",
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        target = render(load_recipe(args.figure_id), args.in_dir, args.out_dir)
    except PlotfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(target)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
