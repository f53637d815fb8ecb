"""Time-series plot of norm columns."""

import sys

from ._cli import base_parser, run_spec
from .render import FigureSpec


def main(argv=None) -> int:
    parser = base_parser("time series from a norms CSV")
    parser.add_argument("--columns", default="eta_linf",
                        help="comma-separated column names")
    args = parser.parse_args(argv)
    cols = tuple(c.strip() for c in args.columns.split(",") if c.strip())
    return run_spec(FigureSpec("series", args.inputs, args.out,
                               title=args.title, columns=cols))


if __name__ == "__main__":
    sys.exit(main())
