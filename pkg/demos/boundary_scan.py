"""
Checking kappa numerically on circles |z| = r
=============================================

Re W is harmonic wherever (zF)' has no zero, so its infimum over the disk
is approached on circles with r -> 1.  ``kappa_numeric`` minimises on
circles 1 - 10^-k, extrapolates the minima and, for growth too slow to
show on those circles, probes arcs much closer to z = 1.

Run with matplotlib installed to also save ``boundary_profile.png``.
"""

import numpy as np

from hypconv.convexity import kappa_closed_form
from hypconv.hyp2f1 import Params
from hypconv.oracle import boundary_profile, deep_probe, derivative_zero_scan, kappa_numeric

p = Params(1, 1.5, 3)
kappa, scan = kappa_numeric(p, full_output=True)
print("closed form", kappa_closed_form(p)[0])
print("numeric    ", kappa, "trend", scan.trend)
for r, value, theta in scan.per_radius_min[::3]:
    print("  1 - r = %.0e  min Re W = %.10f at theta = %.4f" % (1 - r, value, theta))

# A case whose minima look settled on every circle but keep falling
# closer to z = 1.
slow = Params(-0.736, -0.757, -1.41)
print("circle minima:", [round(v, 4) for _, v, _ in kappa_numeric(slow, full_output=True)[1].per_radius_min[-3:]])
for rho, value, _ in deep_probe(slow):
    print("  |1 - z| = %.0e  min Re W = %.4g" % (rho, value))
print("verdict:", kappa_numeric(slow))

# Where (zF)' vanishes, W has a pole and kappa is undefined.
print(derivative_zero_scan(Params(-0.5, 0.6, 0.3)))

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    fig, ax = plt.subplots()
    for r in (0.9, 0.99, 0.999):
        theta, value = np.array(boundary_profile(p, r, samples=1024)).T
        ax.plot(theta, value, label="r = %g" % r)
    ax.set_xlabel("theta")
    ax.set_ylabel("Re W")
    ax.legend()
    fig.savefig("boundary_profile.png", dpi=120)
