"""
Flattening a hump
=================

The graph ``z = 16 u v (1-u) (1-v)`` over the unit square sits on a square
boundary whose minimal spanning surface is the flat square of area 1.  Each
step adds ``t b(u,v) H(u,v) k`` with ``b = u v (1-u) (1-v)`` and
``k = (0, 0, 1)``, and picks ``t`` by minimizing the mean square of the
mean-curvature numerator, which is an exact polynomial in ``t``.
"""

from varsurf import SurfaceSpec, build_rule, get_entry, iterate

entry = get_entry("hump")
rule = build_rule(32, entry.domain)
report = iterate(SurfaceSpec(entry), 2, rule)

###############################################################################
# The functional minimized in the first step, lowest power first.

poly = report.records[1].mu_sq_poly
print("mu_1^2(t) coefficients:", [f"{c:.6g}" for c in poly.coeffs])

###############################################################################
# Areas and how much of the possible decrease each step achieved.

for r in report.records:
    extra = "" if r.p_total is None else f"  p_0{r.n} = {r.p_total:.4f} %"
    t = "" if r.t_min is None else f"  t = {r.t_min:.6f}"
    print(f"A_{r.n} = {r.area:.6f}  nu/mu^2 = {r.ratio:.5f}{t}{extra}")
