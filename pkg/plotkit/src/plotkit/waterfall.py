"""Waterfall plot of axis slices over time."""

import sys

from ._cli import base_parser, run_spec
from .render import FigureSpec


def main(argv=None) -> int:
    parser = base_parser("waterfall plot from a slices CSV")
    parser.add_argument("--field", default="eta", choices=("eta", "vx", "vy"))
    parser.add_argument("--axis", default="x", choices=("x", "y"))
    parser.add_argument("--max-lines", type=int, default=60)
    args = parser.parse_args(argv)
    return run_spec(FigureSpec("waterfall", args.inputs, args.out,
                               title=args.title, field=args.field,
                               axis=args.axis,
                               options={"max_lines": args.max_lines}))


if __name__ == "__main__":
    sys.exit(main())
