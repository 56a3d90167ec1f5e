"""Real polynomials in the variational parameter ``t``.

A :class:`TPoly` is an immutable coefficient vector, ``coeffs[j]`` being
the coefficient of ``t**j``.  Trailing coefficients are trimmed only when
they are exactly zero, so the degree reflects structure rather than size.
"""

from __future__ import annotations

from typing import Iterable, Union

import numpy as np

Number = Union[int, float]


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    if nz.size == 0:
        return c[:0]
    return c[: nz[-1] + 1]


class TPoly:
    """Univariate polynomial with float coefficients, lowest power first."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs, dtype=float).ravel()
        if not np.all(np.isfinite(c)):
            raise ValueError("TPoly coefficients must be finite")
        c = _trim(c).copy()
        c.setflags(write=False)
        self._c = c

    @classmethod
    def t(cls) -> "TPoly":
        """The monomial ``t``."""
        return cls([0.0, 1.0])

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return len(self._c) == 0

    def coeff(self, j: int) -> float:
        return float(self._c[j]) if 0 <= j < len(self._c) else 0.0

    def __repr__(self) -> str:
        return f"TPoly({[float(x) for x in self._c]})"

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, float)):
            other = TPoly([other])
        if not isinstance(other, TPoly):
            return NotImplemented
        return len(self._c) == len(other._c) and bool(np.all(self._c == other._c))

    def __hash__(self) -> int:
        return hash(tuple(self._c.tolist()))

    @staticmethod
    def _coerce(other) -> "TPoly":
        if isinstance(other, TPoly):
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return TPoly([float(other)])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self._c), len(other._c))
        out = np.zeros(n)
        out[: len(self._c)] += self._c
        out[: len(other._c)] += other._c
        return TPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "TPoly":
        return TPoly(-self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return TPoly()
        return TPoly(np.convolve(self._c, other._c))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TPoly":
        if n < 0 or int(n) != n:
            raise ValueError("only non-negative integer powers")
        out = TPoly([1.0])
        for _ in range(int(n)):
            out = out * self
        return out

    def __call__(self, t):
        return tpoly_eval(self, t)

    def derivative(self) -> "TPoly":
        return tpoly_derivative(self)


def tpoly_add(a: TPoly, b: TPoly) -> TPoly:
    return a + b


def tpoly_mul(a: TPoly, b: TPoly) -> TPoly:
    return a * b


def tpoly_eval(p: TPoly, t):
    """Horner evaluation; ``t`` may be a scalar or an array."""
    acc = np.zeros_like(np.asarray(t, dtype=float))
    for c in p.coeffs[::-1]:
        acc = acc * t + c
    return float(acc) if acc.ndim == 0 else acc


def tpoly_derivative(p: TPoly) -> TPoly:
    c = p.coeffs
    if len(c) <= 1:
        return TPoly()
    return TPoly(c[1:] * np.arange(1, len(c)))
