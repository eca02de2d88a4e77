"""Offline figure generation for steersim CSV output."""

from .figures import (
    FIGURE_KINDS,
    ColumnError,
    FigureSpec,
    PlotError,
    build_figure,
    read_table,
    render,
)

__version__ = "0.1.0"
