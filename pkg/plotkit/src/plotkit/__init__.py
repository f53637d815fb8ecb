"""Figure rendering for asbq run outputs (reads documented formats only)."""

from .io import FormatError, read_norms, read_slices, read_snapshot, spectrum_line
from .render import FigureSpec, render

__version__ = "0.1.0"
