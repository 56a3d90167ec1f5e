"""Shared test utilities: random composite expressions and finite differences."""

import math

import mpmath
import numpy as np

from varsurf import jets

FD_STEP = mpmath.mpf("1e-4")


def random_expression(rng, depth=3):
    """A random composite of ``u``, ``v``, constants, ``+ - *``, sin and cos.

    Returns ``(on_jets, on_mp)`` evaluating the same expression on jets and
    on mpmath numbers.
    """
    kind = rng.integers(0, 6) if depth > 0 else rng.integers(0, 3)
    if kind == 0:
        return (lambda u, v: u), (lambda u, v: u)
    if kind == 1:
        return (lambda u, v: v), (lambda u, v: v)
    if kind == 2:
        c = float(np.round(rng.uniform(-2, 2), 3))
        return (lambda u, v: u * 0.0 + c), (lambda u, v: mpmath.mpf(c))
    if kind in (3, 4):
        (fa, ma), (fb, mb) = random_expression(rng, depth - 1), random_expression(rng, depth - 1)
        op = ("add", "sub", "mul")[rng.integers(0, 3)]
        table = {"add": lambda a, b: a + b, "sub": lambda a, b: a - b, "mul": lambda a, b: a * b}
        f = table[op]
        return (lambda u, v: f(fa(u, v), fb(u, v))), (lambda u, v: f(ma(u, v), mb(u, v)))
    fa, ma = random_expression(rng, depth - 1)
    if rng.integers(0, 2):
        return (lambda u, v: jets.sin(fa(u, v))), (lambda u, v: mpmath.sin(ma(u, v)))
    return (lambda u, v: jets.cos(fa(u, v))), (lambda u, v: mpmath.cos(ma(u, v)))


def central_partial(f, u, v, i, j, h=FD_STEP):
    """``d^(i+j) f / du^i dv^j`` by nested central differences in 40-digit arithmetic."""
    with mpmath.workdps(40):
        u, v = mpmath.mpf(u), mpmath.mpf(v)
        total = mpmath.mpf(0)
        for a in range(i + 1):
            for b in range(j + 1):
                w = (-1) ** (a + b) * math.comb(i, a) * math.comb(j, b)
                total += w * f(u + (mpmath.mpf(i) / 2 - a) * h, v + (mpmath.mpf(j) / 2 - b) * h)
        return float(total / h ** (i + j))


def jet_vs_fd_error(rng, n_expr=100, max_order=3):
    """Largest |jet partial - finite difference| over random composites."""
    worst = 0.0
    for _ in range(n_expr):
        fj, fm = random_expression(rng)
        u0, v0 = rng.uniform(-1, 1, 2)
        jet = fj(jets.seed("u", u0, max_order), jets.seed("v", v0, max_order))
        for i in range(max_order + 1):
            for j in range(max_order + 1 - i):
                worst = max(worst, abs(jet.partial(i, j) - central_partial(fm, u0, v0, i, j)))
    return worst


def refinement_errors(report, lo=32, hi=48):
    """Relative change of every integral of a run between two quadrature orders.

    Covers area, mean square of H, mean square of K and each coefficient of
    every step's mean-square polynomial.
    """
    from varsurf.engine import mu_sq_polynomial, surface_metrics
    from varsurf.quadrature import build_rule

    spec = report.spec
    r_lo, r_hi = build_rule(lo, spec.domain), build_rule(hi, spec.domain)
    out = {}
    for n in range(spec.depth + 1):
        s = spec.truncated(n)
        a, b = surface_metrics(s, r_lo), surface_metrics(s, r_hi)
        out[f"A_{n}"] = abs(a.area - b.area) / abs(b.area)
        if b.mu_sq:
            out[f"mu2_{n}"] = abs(a.mu_sq - b.mu_sq) / abs(b.mu_sq)
        if b.nu:
            out[f"nu2_{n}"] = abs(a.nu**2 - b.nu**2) / b.nu**2
        if n < spec.depth:
            pa, pb = mu_sq_polynomial(s, r_lo), mu_sq_polynomial(s, r_hi)
            scale = np.max(np.abs(pb.coeffs))
            out[f"poly_{n + 1}"] = float(np.max(np.abs(pa.coeffs - pb.coeffs)) / scale)
    return out


def brute_force_min(poly, bracket=(-1.0, 1.0), n=10**6):
    """Grid minimum of a polynomial over ``n`` evenly spaced points."""
    t = np.linspace(bracket[0], bracket[1], n)
    vals = np.polynomial.polynomial.polyval(t, poly.coeffs)
    k = int(np.argmin(vals))
    return float(t[k]), float(vals[k])
