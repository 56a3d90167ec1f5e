"""Iterative area reduction of parametric surfaces by mean-curvature variations.

The main entry points are :func:`varsurf.engine.iterate` for surfaces,
:func:`varsurf.curve1d.curve_iterate` for the planar-curve analogue and
:func:`varsurf.catalog.get_entry` for the built-in starting surfaces.
"""

__version__ = "0.1.0"

from .catalog import CatalogEntry, get_entry, load_custom
from .curve1d import CurvePoly, curve_iterate, starting_curve
from .engine import Report, SurfaceSpec, iterate, mu_sq_polynomial
from .quadrature import build_rule
from .tpoly import TPoly

__all__ = [
    "CatalogEntry",
    "CurvePoly",
    "Report",
    "SurfaceSpec",
    "TPoly",
    "build_rule",
    "curve_iterate",
    "get_entry",
    "iterate",
    "load_custom",
    "mu_sq_polynomial",
    "starting_curve",
]
