"""
A bilinear patch that is almost minimal
=======================================

The doubly ruled patch through the corners of a skew quadrilateral is
already close to the minimal surface on that boundary, so there is no
reference area and progress is measured against the starting area.  The
curvature ratio grows quickly: the patch becomes nearly minimal while its
remaining curvature is concentrated.
"""

from varsurf import SurfaceSpec, build_rule, get_entry, iterate

entry = get_entry("bilinear", {"r": 1.0})
report = iterate(SurfaceSpec(entry), 2, build_rule(32, entry.domain))

for r in report.records:
    q = "" if r.q_total is None else f"  q_0{r.n} = {r.q_total:.5f} %"
    print(f"A_{r.n} = {r.area:.6f}  nu/mu^2 = {r.ratio:.4f}{q}")

###############################################################################
# The second-step functional has tiny high-order terms.

print("mu_2^2(t):", [f"{c:.4g}" for c in report.records[2].mu_sq_poly.coeffs])
