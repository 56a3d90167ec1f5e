"""Tensor-product Gauss-Legendre rules on rectangles."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .tpoly import TPoly


def _legendre(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """P_n(x) and P_n'(x) by the three-term recurrence."""
    p0, p1 = np.ones_like(x), x.copy()
    for m in range(2, n + 1):
        p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
    return p1, n * (x * p1 - p0) / (x * x - 1.0)


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1], by Newton iteration on P_n.

    Returns read-only arrays with nodes in ascending order.
    """
    if n < 1:
        raise ValueError("quadrature order must be >= 1")
    k = np.arange(1, n + 1)
    x = np.cos(np.pi * (k - 0.25) / (n + 0.5))
    for _ in range(100):
        p, dp = _legendre(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    _, dp = _legendre(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    x, w = x[::-1].copy(), w[::-1].copy()
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def rule_1d(order: int, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    if not hi > lo:
        raise ValueError(f"degenerate interval [{lo}, {hi}]")
    x, w = gauss_legendre(order)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre product rule.

    ``nodes_u``/``weights_u`` and ``nodes_v``/``weights_v`` are the per-axis
    rules.  The flattened tensor grid (``u``, ``v``, ``weights``) is ordered
    with ``u`` as the slow index.
    """

    order: int
    domain: tuple
    nodes_u: np.ndarray
    nodes_v: np.ndarray
    weights_u: np.ndarray
    weights_v: np.ndarray

    @property
    def u(self) -> np.ndarray:
        return np.repeat(self.nodes_u, len(self.nodes_v))

    @property
    def v(self) -> np.ndarray:
        return np.tile(self.nodes_v, len(self.nodes_u))

    @property
    def weights(self) -> np.ndarray:
        return np.outer(self.weights_u, self.weights_v).ravel()

    @property
    def size(self) -> int:
        return len(self.nodes_u) * len(self.nodes_v)


def build_rule(order: int, domain=(0.0, 1.0, 0.0, 1.0)) -> QuadratureRule:
    """``domain`` is ``(u0, u1, v0, v1)``."""
    u0, u1, v0, v1 = (float(d) for d in domain)
    if not (u1 > u0 and v1 > v0):
        raise ValueError(f"degenerate domain {domain}")
    nu, wu = rule_1d(order, u0, u1)
    nv, wv = rule_1d(order, v0, v1)
    return QuadratureRule(order, (u0, u1, v0, v1), nu, nv, wu, wv)


def integrate(rule: QuadratureRule, values):
    """Weighted sum of a node-indexed field.

    ``values`` has shape ``(rule.size,)`` for real fields or
    ``(rule.size, nt)`` for t-polynomial fields; the latter returns a
    :class:`TPoly`.  A callable ``f(u, v)`` is evaluated on the grid first.
    """
    if callable(values):
        values = values(rule.u, rule.v)
    values = np.asarray(values, dtype=float)
    if values.shape[0] != rule.size:
        raise ValueError(f"field has {values.shape[0]} entries, rule has {rule.size} nodes")
    finite = np.isfinite(values).reshape(rule.size, -1).all(axis=1)
    if not finite.all():
        k = int(np.flatnonzero(~finite)[0])
        raise FloatingPointError(
            f"non-finite integrand at node {k} (u={rule.u[k]:.6g}, v={rule.v[k]:.6g})"
        )
    w = rule.weights
    if values.ndim == 1:
        return float(w @ values)
    return TPoly(w @ values)
