"""Surface plot of a snapshot field."""

import sys

from ._cli import base_parser, run_spec
from .render import FigureSpec


def main(argv=None) -> int:
    parser = base_parser("3D surface plot of a 2D snapshot field")
    parser.add_argument("--field", default="eta", choices=("eta", "vx", "vy"))
    args = parser.parse_args(argv)
    return run_spec(FigureSpec("surface", args.inputs, args.out,
                               title=args.title, field=args.field))


if __name__ == "__main__":
    sys.exit(main())
