"""Static size/mode checker and reference interpreter for the R vector
sublanguage (vectors, arrays, matrices, recycling, NA, indexing)."""

from .interp import run_program
from .shapecheck import check_program
from .syntax import parse_source

__version__ = "0.1.0"

__all__ = ["parse_source", "check_program", "run_program", "__version__"]
