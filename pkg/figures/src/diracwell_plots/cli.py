"""Command line entry point: diracwell-plot KIND INPUT... -o OUTPUT."""

import argparse
import sys
from pathlib import Path

from .figures import KINDS, FigureInputError, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracwell-plot",
        description="Render a figure from diracwell CSV output.")
    parser.add_argument("kind", choices=sorted(KINDS))
    parser.add_argument("inputs", nargs="+", type=Path, metavar="CSV")
    parser.add_argument("-o", "--output", type=Path, required=True,
                        help="image file to write (png, svg, pdf)")
    parser.add_argument("--xlabel")
    parser.add_argument("--ylabel")
    parser.add_argument("--label", action="append", default=[],
                        help="legend label, one per input (overlays only)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(inputs=tuple(args.inputs), kind=args.kind,
                          output=args.output, xlabel=args.xlabel,
                          ylabel=args.ylabel, labels=tuple(args.label))
        out = render(spec)
    except (FigureInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
