"""
Hemiellipsoid: two ways to start
================================

Half of an ellipsoid spans the unit circle in the ``xz`` plane.  The first
displacement can use the true mean-curvature numerator or, since the
hemisphere has constant curvature, a unit value.  The unit value gives a
much larger first step.  Used at every step it cannot make progress: the
second displacement field is the first one again.
"""

import numpy as np

from varsurf import SurfaceSpec, build_rule, get_entry, iterate
from varsurf.engine import non_iterability_ratios

for mode, steps in (("unit_H_first_step", 3), ("true_H", 2)):
    entry = get_entry("hemiellipsoid", {"b": 1.0, "c": 1.0}, h0_mode=mode)
    report = iterate(SurfaceSpec(entry), steps, build_rule(32, entry.domain))
    print(mode)
    for r in report.records:
        t = "" if r.t_min is None else f"  t = {r.t_min:+.6f}"
        p = "" if r.p_total is None else f"  p_0{r.n} = {r.p_total:.4f} %"
        print(f"  A_{r.n} = {r.area:.6f}{t}{p}")

###############################################################################
# The unit value applied every step: the second field is proportional to the
# first at every node.

always = get_entry("hemiellipsoid", h0_mode="unit_H_always")
rng = np.random.default_rng(0)
u, v = rng.uniform(0.1, 3.0, 10), rng.uniform(0.1, 3.0, 10)
ratios = non_iterability_ratios(always, -0.35157, u, v)
print("displacement ratios:", np.round(ratios, 12))
