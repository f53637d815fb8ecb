"""Shared command-line plumbing for the figure scripts."""

import argparse
import sys

from .io import FormatError
from .render import FigureSpec, render


def base_parser(description: str) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("--in", dest="inputs", required=True, action="append",
                        help="input file (snapshot or CSV)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--title", default="", help="figure title")
    return parser


def run_spec(spec: FigureSpec) -> int:
    try:
        path = render(spec)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0
