"""
Shortening a planar curve
=========================

The one-dimensional warm-up.  A polynomial graph ``y(u)`` over ``[0, 1]``
with fixed end points is replaced, step by step, by

    y + t u (1 - u) y''

where ``t`` minimizes the Dirichlet energy of the new graph.  The energy is
quadratic in ``t``, so each step is closed form.
"""

from varsurf.curve1d import curve_iterate, starting_curve, step_quadratic

c0 = starting_curve()
print("starting coefficients:", [round(float(x), 6) for x in c0.y_coeffs])

# The first step's quadratic a t^2 + b t + c and its minimizer.
a, b, c = step_quadratic(c0)
print(f"first step: t = -b / 2a = {-b / (2 * a):.6f}")

###############################################################################
# Eight steps.  The length falls towards the chord length sqrt(2).

records = curve_iterate(c0, 8)
print(f"{'i':>2} {'length':>10} {'t_min':>10}")
for r in records:
    t = "" if r.t_min is None else f"{r.t_min:.6f}"
    print(f"{r.n:>2} {r.length:>10.6f} {t:>10}")

print(f"length decrease after one step: {records[1].length_pct:.4f} %")
