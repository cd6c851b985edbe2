"""Script entry point: render one figure from CSV input(s).

    rkc-plot heatmap grid.csv fig.png [--box zmin zmax wmin wmax]
    rkc-plot contour dom.csv fig.png
    rkc-plot timeseries norms.csv norms_rkc.csv fig.png [--labels a b]
    rkc-plot loglog conv.csv fig.png [--slopes 1 1.5 2]

Exit codes: 0 success, 2 usage error, 1 missing or ill-formed input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from rkcplots.figures import FigureSpec, render


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rkc-plot", description=__doc__)
    parser.add_argument("kind", choices=("heatmap", "contour", "timeseries", "loglog"))
    parser.add_argument("paths", nargs="+",
                        help="input CSV path(s) followed by the output image path")
    parser.add_argument("--title", default="")
    parser.add_argument("--labels", nargs="+")
    parser.add_argument("--slopes", nargs="+", type=float, default=[1.0, 1.5, 2.0])
    parser.add_argument("--box", nargs=4, type=float, metavar=("ZMIN", "ZMAX", "WMIN", "WMAX"))
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if len(args.paths) < 2:
        parser.error("need at least one input CSV and the output image path")
    spec = FigureSpec(
        inputs=args.paths[:-1],
        kind=args.kind,
        output=args.paths[-1],
        title=args.title,
        labels=args.labels,
        guide_slopes=tuple(args.slopes),
        box=tuple(args.box) if args.box else None,
    )
    try:
        render(spec)
    except (OSError, ValueError) as exc:
        print(f"error: {args.kind}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
