"""Fundamental magnitudes and curvature numerators from surface jets.

Second magnitudes use the unnormalized normal ``N = x_u x x_v``, so ``e, f,
g`` and everything built from them are polynomial in the jet coefficients.
No square root or division enters until :func:`area_integrand`.

All functions accept jets over either ring and return jets one or two
orders lower; read point values with ``.value``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jets import Jet, TPOLY


class DegenerateSurfaceError(ArithmeticError):
    """``EG - F**2`` is clearly negative at some node."""


@dataclass(frozen=True)
class SurfacePointJets:
    x: Jet
    y: Jet
    z: Jet

    def __post_init__(self):
        if not (self.x.order == self.y.order == self.z.order):
            raise ValueError("component jets must share one order")
        if not (self.x.ring == self.y.ring == self.z.ring):
            raise ValueError("component jets must share one ring")

    @property
    def order(self) -> int:
        return self.x.order

    @property
    def ring(self) -> str:
        return self.x.ring

    def components(self) -> tuple:
        return (self.x, self.y, self.z)

    def d(self, var: str) -> tuple:
        return tuple(c.d(var) for c in self.components())


@dataclass(frozen=True)
class FundamentalMagnitudes:
    E: object
    F: object
    G: object
    e: object
    f: object
    g: object

    def at_t(self, t: float) -> "FundamentalMagnitudes":
        return FundamentalMagnitudes(
            *(q.at_t(t) if isinstance(q, Jet) else q for q in self._fields())
        )

    def _fields(self):
        return (self.E, self.F, self.G, self.e, self.f, self.g)


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _lower(vec, order):
    return tuple(c.truncate(order) for c in vec)


def normal_numerator(p: SurfacePointJets) -> tuple:
    """``x_u x x_v`` as three jets of order ``p.order - 1``."""
    if p.order < 1:
        raise ValueError("normal needs a jet of order >= 1")
    return _cross(p.d("u"), p.d("v"))


def fundamental_magnitudes(p: SurfacePointJets) -> FundamentalMagnitudes:
    """E, F, G and the numerator-convention e, f, g as jets of order ``K - 2``."""
    if p.order < 2:
        raise ValueError("fundamental magnitudes need a jet of order >= 2")
    k = p.order - 2
    xu, xv = p.d("u"), p.d("v")
    n = _lower(_cross(xu, xv), k)
    xuu = tuple(c.d("u") for c in xu)
    xuv = tuple(c.d("v") for c in xu)
    xvv = tuple(c.d("v") for c in xv)
    xu, xv = _lower(xu, k), _lower(xv, k)
    return FundamentalMagnitudes(
        E=_dot(xu, xu),
        F=_dot(xu, xv),
        G=_dot(xv, xv),
        e=_dot(xuu, n),
        f=_dot(xuv, n),
        g=_dot(xvv, n),
    )


def mean_curvature_numerator(m: FundamentalMagnitudes):
    """``E g - 2 F f + G e``; vanishes exactly where the mean curvature does."""
    return m.E * m.g - 2.0 * (m.F * m.f) + m.G * m.e


def gaussian_curvature_numerator(m: FundamentalMagnitudes):
    """``e g - f**2`` in the same unnormalized convention."""
    return m.e * m.g - m.f * m.f


def metric_determinant(m: FundamentalMagnitudes):
    return m.E * m.G - m.F * m.F


def area_integrand(m: FundamentalMagnitudes, t: float | None = None, tol: float = 1e-10):
    """``sqrt(EG - F**2)`` at every node, after substituting ``t`` if needed."""
    w = metric_determinant(m)
    if isinstance(w, Jet):
        if w.ring == TPOLY:
            if t is None:
                raise ValueError("t is required for tpoly-ring magnitudes")
            w = w.at_t(t)
        w = w.value
    w = np.asarray(w, dtype=float)
    bad = np.flatnonzero(w.ravel() < -tol)
    if bad.size:
        raise DegenerateSurfaceError(
            f"EG - F^2 = {w.ravel()[bad[0]]:.3e} < 0 at node {int(bad[0])}"
        )
    return np.sqrt(np.clip(w, 0.0, None))
