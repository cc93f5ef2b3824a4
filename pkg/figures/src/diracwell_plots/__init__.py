"""Figure scripts for diracwell CSV outputs."""

from .figures import (KINDS, FigureInputError, FigureSpec, build_figure,
                      read_table, render)

__all__ = ["KINDS", "FigureInputError", "FigureSpec", "build_figure",
           "read_table", "render"]

__version__ = "0.1.0"
