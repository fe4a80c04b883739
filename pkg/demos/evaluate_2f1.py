"""
Evaluating 2F1 across the closed unit disk
==========================================

``eval_auto`` picks a route from the position of z: the power series in
the middle of the disk, the expansion about z = 1 close to the branch
point, and a transformation or step-by-step continuation elsewhere.
"""

import math

import numpy as np

from hypconv.hyp2f1 import Params, eval_auto, value_at_one

# -log(1 - z)/z is 2F1(1, 1; 2; z); compare along a ray towards z = 1.
p = Params(1, 1, 2)
for x in (0.3, 0.9, 0.99, 0.999999):
    r = eval_auto(p, x)
    exact = -math.log1p(-x) / x
    print("x = %-9g %-12s value %.16f  error %.1e  bound %.1e" % (x, r.method, r.value.real, abs(r.value.real - exact), r.error_bound))

# On the unit circle the series does not converge; the value still comes
# back, with a flag naming the route.
for theta in np.linspace(0.5, math.pi, 4):
    z = complex(math.cos(theta), math.sin(theta))
    r = eval_auto(Params(0.5, 0.5, 2.0), z)
    print("theta = %.3f  %-12s %s" % (theta, r.method, r.value))

# Gauss's sum gives F(1) when c > a + b.
print("F(1/2, 1/2; 2; 1) =", value_at_one(Params(0.5, 0.5, 2.0)), " 4/pi =", 4 / math.pi)
