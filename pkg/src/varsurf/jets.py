"""Truncated bivariate Taylor expansions (jets) in ``(u, v)``.

A jet of order ``K`` stores ``c[i][j] = d^(i+j) f / du^i dv^j / (i! j!)`` for
``i + j <= K`` in packed form, ordered by total degree and then by the power
of ``v``.  Every coefficient may carry a batch shape (one entry per
evaluation node) so that whole quadrature grids are pushed through the
arithmetic at once.

Two coefficient rings are supported:

``"real"``
    coefficient arrays have shape ``(ncoef, *batch)``.
``"tpoly"``
    coefficient arrays have shape ``(ncoef, *batch, nt)``; the trailing axis
    holds polynomial coefficients in the variational parameter ``t``.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .tpoly import TPoly

REAL = "real"
TPOLY = "tpoly"


class JetStructureError(ValueError):
    """Operands of a jet operation have incompatible order or ring."""


def ncoef(order: int) -> int:
    return (order + 1) * (order + 2) // 2


def index(i: int, j: int) -> int:
    d = i + j
    return d * (d + 1) // 2 + j


@lru_cache(maxsize=None)
def _multi_indices(order: int) -> tuple:
    return tuple((d - j, j) for d in range(order + 1) for j in range(d + 1))


@lru_cache(maxsize=None)
def _product_table(order: int):
    # (ia, ib) pairs contributing to each output index, grouped for reduceat.
    mi = _multi_indices(order)
    rows = []
    for ka, (i1, j1) in enumerate(mi):
        for kb, (i2, j2) in enumerate(mi):
            if i1 + i2 + j1 + j2 <= order:
                rows.append((index(i1 + i2, j1 + j2), ka, kb))
    rows.sort()
    rows = np.array(rows, dtype=np.intp)
    ic, ia, ib = rows[:, 0], rows[:, 1], rows[:, 2]
    starts = np.flatnonzero(np.r_[True, ic[1:] != ic[:-1]])
    return ia, ib, starts


@lru_cache(maxsize=None)
def _derivative_table(order: int, var: str):
    src, scale = [], []
    for i, j in _multi_indices(order - 1):
        if var == "u":
            src.append(index(i + 1, j))
            scale.append(i + 1)
        else:
            src.append(index(i, j + 1))
            scale.append(j + 1)
    return np.array(src, dtype=np.intp), np.array(scale, dtype=float)


def _tconv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Polynomial product along the last axis, broadcasting the rest."""
    na, nb = a.shape[-1], b.shape[-1]
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (na + nb - 1,)
    out = np.zeros(shape)
    for m in range(na):
        out[..., m : m + nb] += a[..., m : m + 1] * b
    return out


def _pad_t(a: np.ndarray, nt: int) -> np.ndarray:
    if a.shape[-1] == nt:
        return a
    pad = [(0, 0)] * (a.ndim - 1) + [(0, nt - a.shape[-1])]
    return np.pad(a, pad)


class Jet:
    """Truncated Taylor expansion of a scalar field in ``(u, v)``."""

    __array_ufunc__ = None

    def __init__(self, coeffs: np.ndarray, order: int, ring: str = REAL):
        coeffs = np.asarray(coeffs, dtype=float)
        if order < 0:
            raise JetStructureError("jet order must be non-negative")
        if coeffs.shape[0] != ncoef(order):
            raise JetStructureError(
                f"order {order} needs {ncoef(order)} coefficients, got {coeffs.shape[0]}"
            )
        if ring not in (REAL, TPOLY):
            raise JetStructureError(f"unknown ring {ring!r}")
        if ring == TPOLY and coeffs.ndim < 2:
            raise JetStructureError("tpoly jets need a trailing t axis")
        self.coeffs = coeffs
        self.order = order
        self.ring = ring

    # -- construction -------------------------------------------------------

    @classmethod
    def constant(cls, value, order: int, ring: str = REAL) -> "Jet":
        if isinstance(value, TPoly):
            if ring != TPOLY:
                raise JetStructureError("TPoly constants live in the tpoly ring")
            value = value.coeffs if not value.is_zero() else np.zeros(1)
        value = np.asarray(value, dtype=float)
        if ring == TPOLY and isinstance(value, np.ndarray) and value.ndim == 0:
            value = value[None]
        c = np.zeros((ncoef(order),) + value.shape)
        c[0] = value
        return cls(c, order, ring)

    @property
    def batch_shape(self) -> tuple:
        return self.coeffs.shape[1:-1] if self.ring == TPOLY else self.coeffs.shape[1:]

    @property
    def nt(self) -> int:
        return self.coeffs.shape[-1] if self.ring == TPOLY else 1

    # -- ring handling -------------------------------------------------------

    def as_tpoly(self) -> "Jet":
        if self.ring == TPOLY:
            return self
        return Jet(self.coeffs[..., None], self.order, TPOLY)

    def at_t(self, t: float) -> "Jet":
        """Substitute a numeric ``t`` and return the real-ring jet."""
        if self.ring == REAL:
            return self
        c = self.coeffs
        acc = np.zeros(c.shape[:-1])
        for m in range(c.shape[-1] - 1, -1, -1):
            acc = acc * t + c[..., m]
        return Jet(acc, self.order, REAL)

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise JetStructureError(f"cannot raise jet order {self.order} to {order}")
        return Jet(self.coeffs[: ncoef(order)], order, self.ring)

    # -- access ---------------------------------------------------------------

    def coeff(self, i: int, j: int):
        if i < 0 or j < 0 or i + j > self.order:
            raise JetStructureError(f"index ({i}, {j}) beyond jet order {self.order}")
        return self.coeffs[index(i, j)]

    def partial(self, i: int, j: int):
        """``d^(i+j) f / du^i dv^j`` at the expansion point(s)."""
        c = self.coeff(i, j) * (math.factorial(i) * math.factorial(j))
        if self.ring == TPOLY and c.ndim == 1:
            return TPoly(c)
        if np.ndim(c) == 0:
            return float(c)
        return c

    @property
    def value(self):
        return self.partial(0, 0)

    def d(self, var: str) -> "Jet":
        """Partial derivative jet, one order lower."""
        if self.order < 1:
            raise JetStructureError("cannot differentiate an order-0 jet")
        src, scale = _derivative_table(self.order, var)
        c = self.coeffs[src]
        c = c * scale.reshape((-1,) + (1,) * (c.ndim - 1))
        return Jet(c, self.order - 1, self.ring)

    # -- arithmetic -----------------------------------------------------------

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.order != self.order:
                raise JetStructureError(
                    f"jet order mismatch: {self.order} vs {other.order}"
                )
            if other.ring != self.ring:
                raise JetStructureError(f"jet ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, TPoly):
            if self.ring != TPOLY:
                raise JetStructureError("TPoly operands need a tpoly-ring jet")
            tc = other.coeffs if not other.is_zero() else np.zeros(1)
            c = np.zeros((ncoef(self.order),) + (1,) * len(self.batch_shape) + (len(tc),))
            c[0] = tc
            return Jet(c, self.order, TPOLY)
        if isinstance(other, (int, float, np.integer, np.floating, np.ndarray)):
            val = np.asarray(other, dtype=float)
            if val.ndim == 0:
                val = val.reshape((1,) * len(self.batch_shape))
            if self.ring == TPOLY:
                val = val[..., None]
            c = np.zeros((ncoef(self.order),) + val.shape)
            c[0] = val
            return Jet(c, self.order, self.ring)
        return NotImplemented

    def _scale(self, val) -> "Jet":
        val = np.asarray(val, dtype=float)
        if self.ring == TPOLY:
            val = val[..., None]
        return Jet(self.coeffs * val[None], self.order, self.ring)

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if self.ring == TPOLY:
            nt = max(a.shape[-1], b.shape[-1])
            a, b = _pad_t(a, nt), _pad_t(b, nt)
        return Jet(a + b, self.order, self.ring)

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet(-self.coeffs, self.order, self.ring)

    def __pos__(self) -> "Jet":
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating, np.ndarray)):
            return self._scale(other)
        if isinstance(other, TPoly) and self.ring == TPOLY:
            tc = other.coeffs if not other.is_zero() else np.zeros(1)
            return Jet(_tconv(self.coeffs, tc), self.order, TPOLY)
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        ia, ib, starts = _product_table(self.order)
        if self.ring == REAL:
            terms = self.coeffs[ia] * o.coeffs[ib]
        else:
            terms = _tconv(self.coeffs[ia], o.coeffs[ib])
        return Jet(np.add.reduceat(terms, starts, axis=0), self.order, self.ring)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return Jet(self.coeffs / float(other), self.order, self.ring)
        return NotImplemented

    def __pow__(self, n: int) -> "Jet":
        if int(n) != n or n < 0:
            raise ValueError("jets support non-negative integer powers only")
        out = self.constant_like(1.0)
        base = self
        n = int(n)
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def constant_like(self, value) -> "Jet":
        return self._lift(np.broadcast_to(np.asarray(value, dtype=float), self.batch_shape))

    def __repr__(self) -> str:
        return f"Jet(order={self.order}, ring={self.ring}, batch={self.batch_shape})"


def seed(variable: str, value, order: int) -> Jet:
    """Jet of the coordinate function ``u`` or ``v`` expanded at ``value``."""
    if variable not in ("u", "v"):
        raise ValueError(f"variable must be 'u' or 'v', got {variable!r}")
    if order < 0:
        raise JetStructureError("jet order must be non-negative")
    value = np.asarray(value, dtype=float)
    c = np.zeros((ncoef(order),) + value.shape)
    c[0] = value
    if order >= 1:
        c[index(1, 0) if variable == "u" else index(0, 1)] = 1.0
    return Jet(c, order, REAL)


def arith(a: Jet, b: Jet, op: str) -> Jet:
    if not isinstance(a, Jet) or not isinstance(b, Jet):
        raise JetStructureError("arith expects two jets")
    b = a._lift(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def _series_parts(a: Jet):
    if a.ring != REAL:
        raise JetStructureError("sin/cos are only defined on real-ring jets")
    a0 = a.coeffs[0]
    delta = Jet(a.coeffs.copy(), a.order, REAL)
    delta.coeffs[0] = 0.0
    # delta has no constant term, so delta**k vanishes below total degree k
    s = delta.constant_like(0.0)
    c = delta.constant_like(1.0)
    power = delta.constant_like(1.0)
    for k in range(1, a.order + 1):
        power = power * delta
        term = power / math.factorial(k)
        r = k % 4
        if r == 1:
            s = s + term
        elif r == 2:
            c = c - term
        elif r == 3:
            s = s - term
        else:
            c = c + term
    return a0, s, c


def sin(a: Jet) -> Jet:
    a0, sd, cd = _series_parts(a)
    return sd * np.cos(a0) + cd * np.sin(a0)


def cos(a: Jet) -> Jet:
    a0, sd, cd = _series_parts(a)
    return cd * np.cos(a0) - sd * np.sin(a0)


def transcendental(a: Jet, f: str) -> Jet:
    if f == "sin":
        return sin(a)
    if f == "cos":
        return cos(a)
    raise ValueError(f"unsupported function {f!r}")
