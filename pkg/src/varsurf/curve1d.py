"""The planar-curve analogue: shorten ``(u, y(u))`` with fixed ends.

Each step replaces ``y`` by ``y + t u (1 - u) y''`` and picks ``t`` to
minimize the Dirichlet energy ``int_0^1 (d/du of the new y)^2 du``, a
quadratic in ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .quadrature import rule_1d

LENGTH_QUAD_ORDER = 64


@dataclass(frozen=True)
class CurvePoly:
    """Graph curve ``(u, y(u))``; ``y_coeffs[k]`` multiplies ``u**k``."""

    y_coeffs: tuple

    @classmethod
    def from_poly(cls, p: Polynomial) -> "CurvePoly":
        c = np.trim_zeros(np.asarray(p.coef, dtype=float), "b")
        return cls(tuple(float(x) for x in c) or (0.0,))

    @property
    def poly(self) -> Polynomial:
        return Polynomial(self.y_coeffs)

    def __call__(self, u):
        return self.poly(u)


@dataclass(frozen=True)
class CurveRecord:
    n: int
    length: float
    t_min: float | None = None
    length_pct: float | None = None
    y_coeffs: tuple = ()


def starting_curve() -> CurvePoly:
    """``y = u - u**8``."""
    return CurvePoly((0.0, 1.0, 0, 0, 0, 0, 0, 0, -1.0))


def _bump() -> Polynomial:
    return Polynomial([0.0, 1.0, -1.0])


def step_quadratic(c: CurvePoly) -> tuple[float, float, float]:
    """Coefficients ``(a, b, c0)`` of ``mu^2(t) = a t^2 + b t + c0``."""
    y1 = c.poly.deriv()
    w = (_bump() * c.poly.deriv(2)).deriv()
    a = (w * w).integ()
    b = (2 * y1 * w).integ()
    c0 = (y1 * y1).integ()
    return float(a(1) - a(0)), float(b(1) - b(0)), float(c0(1) - c0(0))


def curve_step(c: CurvePoly) -> tuple[CurvePoly, float]:
    """One shortening step; returns the new curve and the chosen ``t``.

    A curve with zero second derivative is returned unchanged with ``t = 0``.
    """
    y2 = c.poly.deriv(2)
    if not np.any(y2.coef):
        return c, 0.0
    a, b, _ = step_quadratic(c)
    if a <= 0.0:
        raise ArithmeticError(f"Dirichlet energy is not convex in t (a = {a})")
    t = -b / (2.0 * a)
    return CurvePoly.from_poly(c.poly + t * _bump() * y2), t


def curve_length(c: CurvePoly, order: int = LENGTH_QUAD_ORDER) -> float:
    x, w = rule_1d(order, 0.0, 1.0)
    dy = c.poly.deriv()(x)
    return float(w @ np.sqrt(1.0 + dy * dy))


def curve_iterate(c0: CurvePoly, steps: int, order: int = LENGTH_QUAD_ORDER) -> list[CurveRecord]:
    """Records for ``c0`` and ``steps`` successors.

    ``length_pct`` is ``100 (l_{n-1} - l_n) / (l_0 - d)`` with ``d`` the chord
    length between the fixed end points.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    chord = float(np.hypot(1.0, c0(1.0) - c0(0.0)))
    l0 = curve_length(c0, order)
    out = [CurveRecord(0, l0, y_coeffs=c0.y_coeffs)]
    cur = c0
    for n in range(1, steps + 1):
        cur, t = curve_step(cur)
        ln = curve_length(cur, order)
        pct = 100.0 * (out[-1].length - ln) / (l0 - chord) if l0 > chord else 0.0
        out.append(CurveRecord(n, ln, t, pct, cur.y_coeffs))
    return out
