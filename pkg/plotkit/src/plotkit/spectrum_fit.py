"""Log-spectrum plot with the fitted decay line overlaid."""

import sys

from ._cli import base_parser, run_spec
from .render import FigureSpec


def main(argv=None) -> int:
    parser = base_parser("spectrum of a snapshot field with a tail fit")
    parser.add_argument("--field", default="eta", choices=("eta", "vx", "vy"))
    parser.add_argument("--axis", default="x", choices=("x", "y"))
    parser.add_argument("--lo-frac", type=float, default=0.0625)
    parser.add_argument("--hi-frac", type=float, default=0.5)
    args = parser.parse_args(argv)
    return run_spec(FigureSpec("spectrum-fit", args.inputs, args.out,
                               title=args.title, field=args.field,
                               axis=args.axis,
                               options={"lo_frac": args.lo_frac,
                                        "hi_frac": args.hi_frac}))


if __name__ == "__main__":
    sys.exit(main())
