"""Real roots and global minima of univariate polynomials on an interval."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tpoly import TPoly, tpoly_derivative, tpoly_eval

GRID_CELLS = 1024


@dataclass(frozen=True)
class MinimizationResult:
    t_min: float
    value: float
    stationary_points: list = field(default_factory=list)
    bracket: tuple = (-1.0, 1.0)


def _refine(p: TPoly, dp: TPoly, a: float, b: float, fa: float, tol: float) -> float:
    # bisection until the bracket is small, then Newton polish kept inside it
    for _ in range(200):
        if b - a <= tol:
            break
        m = 0.5 * (a + b)
        fm = tpoly_eval(p, m)
        if fm == 0.0:
            return m
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b = m
    x = 0.5 * (a + b)
    for _ in range(5):
        d = tpoly_eval(dp, x)
        if d == 0.0:
            break
        nx = x - tpoly_eval(p, x) / d
        if not (a - tol <= nx <= b + tol):
            break
        x = nx
    return x


def real_roots(p: TPoly, interval=(-1.0, 1.0), tol: float = 1e-12) -> list[float]:
    """Sign-change roots of ``p`` in ``[lo, hi]``, sorted and de-duplicated.

    Roots of even multiplicity (no sign change) are found only if they fall
    exactly on a grid point.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    if p.degree == 0:
        return []
    dp = tpoly_derivative(p)
    grid = np.linspace(lo, hi, GRID_CELLS + 1)
    vals = tpoly_eval(p, grid)
    roots = [float(x) for x, y in zip(grid, vals) if y == 0.0]
    for k in range(GRID_CELLS):
        ya, yb = vals[k], vals[k + 1]
        if ya != 0.0 and yb != 0.0 and (ya < 0) != (yb < 0):
            roots.append(_refine(p, dp, grid[k], grid[k + 1], ya, tol))
    roots.sort()
    out: list[float] = []
    for r in roots:
        if not out or r - out[-1] > 10 * tol:
            out.append(r)
    return out


def minimize(p: TPoly, interval=(-1.0, 1.0)) -> MinimizationResult:
    """Global minimum of ``p`` over the closed interval.

    Candidates are the stationary points inside the interval, both ends and
    ``t = 0`` when it lies inside.  Equal values go to the smallest ``|t|``.
    """
    if p.degree < 1:
        raise ValueError("cannot minimize a constant polynomial")
    lo, hi = float(interval[0]), float(interval[1])
    crit = real_roots(tpoly_derivative(p), (lo, hi)) if p.degree > 1 else []
    cands = sorted(set([lo, hi] + crit + ([0.0] if lo <= 0.0 <= hi else [])))
    scored = [(float(tpoly_eval(p, t)), abs(t), t) for t in cands]
    value, _, t_min = min(scored)
    return MinimizationResult(
        t_min=float(t_min),
        value=value,
        stationary_points=[(t, float(tpoly_eval(p, t))) for t in crit],
        bracket=(lo, hi),
    )
