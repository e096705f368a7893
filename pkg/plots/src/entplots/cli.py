"""Command-line entry point: plot <kind> --in <csv> --out <png>."""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, PlotJob, SchemaError, render

EXIT_USAGE = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot", description="Render an entrates scan CSV as an image."
    )
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("--in", dest="input_csv", required=True, metavar="CSV")
    parser.add_argument("--out", dest="output_image", required=True, metavar="PNG")
    parser.add_argument("--surface", action="store_true",
                        help="3D surface instead of the default heatmap")
    parser.add_argument("--cmap", default=None, help="matplotlib colormap name")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = PlotJob(
        input_csv=args.input_csv,
        kind=args.kind,
        output_image=args.output_image,
        surface=args.surface,
        cmap=args.cmap,
    )
    try:
        render(job)
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: cannot read/write: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
