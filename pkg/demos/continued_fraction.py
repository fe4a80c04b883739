"""
The ratio G/F as a continued fraction
=====================================

For -1 <= a <= c and 0 <= b <= c the ratio
G/F = 2F1(a+1, b; c; z) / 2F1(a, b; c; z) has a continued fraction with
coefficients g(n) in [0, 1].  At z = -1 its convergents bracket the
value, which gives cheap two-sided bounds.
"""

from hypconv.cfrac import cf_coefficients, eval_ratio_cf, wall_bounds_at_minus1
from hypconv.hyp2f1 import Params, eval_auto

p = Params(0.5, 0.5, 1.5)
print("g(0..6) =", [round(g, 6) for g in cf_coefficients(p, 6).values])

# Compare with the quotient of two separately evaluated functions.
for z in (0.5, -0.9, 0.7j, -1.0):
    cf = eval_ratio_cf(p, z)
    direct = eval_auto(Params(1.5, 0.5, 1.5), z).value / eval_auto(p, z).value
    print("z = %-6s cf %s  direct %s" % (z, cf, direct))

bound = wall_bounds_at_minus1(p)
print("(G/F)(-1) = %.12f lies in [%.12f, %.12f]" % (eval_ratio_cf(p, -1.0).real, bound.lower, bound.upper))
