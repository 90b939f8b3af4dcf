"""Render benchmark CSV results as static charts.

Consumes the harness CSV schema (model,n,m,w,epsilon,algo,...) and, for
each selected cell (model, epsilon, degree, w), renders three images:
running time vs edge count, absolute error with the tolerance cone, and
relative error with the +-epsilon guide lines.
"""

from .render import CellKey, RenderError, render

__version__ = "0.1.0"

__all__ = ["CellKey", "RenderError", "render", "__version__"]
