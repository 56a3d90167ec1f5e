"""
A custom patch from JSON
========================

Surfaces outside the catalog are described by a small JSON document.  The
blend must vanish on the boundary; this is checked when the document is
loaded.
"""

import json

from varsurf import SurfaceSpec, build_rule, iterate, load_custom

document = {
    "name": "saddle-bump",
    "components": ["u", "v", "u*v + 4*u*v*(1-u)*(1-v)"],
    "domain": [0, 1, 0, 1],
    "blend": "u*v*(1-u)*(1-v)",
    "direction": {"fixed": [0, 0, 1]},
    "h0_mode": "true_H",
}
entry = load_custom(json.dumps(document))
report = iterate(SurfaceSpec(entry), 2, build_rule(32, entry.domain))
for r in report.records:
    t = "" if r.t_min is None else f"  t = {r.t_min:.6f}"
    print(f"A_{r.n} = {r.area:.6f}{t}")

###############################################################################
# A blend that does not vanish on the boundary is refused.

try:
    load_custom(dict(document, blend="1 + u"))
except ValueError as exc:
    print("rejected:", exc)
