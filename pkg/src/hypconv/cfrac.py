"""Gauss continued fraction for G/F = 2F1(a+1,b;c;z) / 2F1(a,b;c;z).

The fraction is

    G/F = 1 / (1 - (1-g0) g1 z / (1 - (1-g1) g2 z / (1 - ...)))

with g0 = 0, g(2k) = (a+k)/(c+2k-1) and g(2k-1) = (b+k-1)/(c+2k-2).  When
-1 <= a <= c and 0 <= b <= c all g(n) lie in [0, 1]; the fraction then
converges on the cut plane and G/F maps the disk into Re w > 1/2.
"""

from dataclasses import dataclass

import numpy as np

from .errors import CFDivisionByZero, CFNotConverged, NoConvergence, PreconditionViolated

__all__ = [
    "CFCoefficients",
    "CircleBound",
    "cf_coefficients",
    "g_coefficient",
    "in_box",
    "eval_ratio_cf",
    "wall_bounds_at_minus1",
    "cauchy_factor",
]

_TINY = 1e-30
_MAX_DEPTH = 100_000


def g_coefficient(a, b, c, n):
    """Single coefficient g(n) of the schedule; see module docstring."""
    if n == 0:
        return 0.0
    if n % 2:
        k = (n + 1) // 2
        num, den = b + (k - 1.0), c + (2.0 * k - 2.0)
    else:
        k = n // 2
        num, den = a + k, c + (2.0 * k - 1.0)
    if den == 0.0:
        raise CFDivisionByZero("g(%d) has a zero denominator for c = %g" % (n, c))
    return num / den


@dataclass(frozen=True)
class CFCoefficients:
    """The first ``len(values)`` coefficients g(0), g(1), ... for ``p``."""

    p: object
    values: tuple

    def g(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class CircleBound:
    """Two-sided enclosure [lower, upper] of the fraction's value at z = -1."""

    lower: float
    upper: float

    def contains(self, x, slack=0.0):
        return self.lower - slack <= x <= self.upper + slack


def cf_coefficients(p, n_max):
    """g(0), ..., g(n_max) for parameters ``p``.

    Examples
    --------
    >>> from hypconv.hyp2f1 import Params
    >>> cf_coefficients(Params(1, 1, 2), 4).values
    (0.0, 0.5, 0.6666666666666666, 0.5, 0.6)
    """
    return CFCoefficients(p, tuple(g_coefficient(p.a, p.b, p.c, n) for n in range(int(n_max) + 1)))


def in_box(p):
    """True when -1 <= a <= c, 0 <= b <= c and c != 0."""
    return p.c != 0 and -1.0 <= p.a <= p.c and 0.0 <= p.b <= p.c


def _require_box(p):
    if not in_box(p):
        raise PreconditionViolated(
            "continued fraction needs -1 <= a <= c and 0 <= b <= c, got (a, b, c) = (%g, %g, %g)"
            % (p.a, p.b, p.c)
        )


def eval_ratio_cf(p, z, tol=1e-15, max_depth=_MAX_DEPTH):
    """Evaluate G/F by the Gauss continued fraction (modified Lentz).

    Parameters
    ----------
    p : Params
        Must satisfy :func:`in_box`.
    z : complex or array_like
        Points off the cut [1, inf).
    tol : float
        Relative change of consecutive convergents; two passes in a row.

    Returns
    -------
    complex or ndarray
        Same shape as ``z``.

    Raises
    ------
    PreconditionViolated
        Outside the parameter box.
    CFNotConverged
        If ``max_depth`` levels do not settle every point.
    """
    _require_box(p)
    zarr = np.asarray(z, dtype=complex)
    scalar = zarr.ndim == 0
    zarr = np.atleast_1d(zarr).ravel()
    on_cut = (zarr.imag == 0) & (zarr.real >= 1.0)
    if on_cut.any():
        raise NoConvergence("the continued fraction is not defined on the cut [1, inf)")
    a, b, c = p.a, p.b, p.c

    # b0 = 0, so start from the tiny floor; a1 = 1, b_n = 1.
    f = np.full(zarr.shape, _TINY, dtype=complex)
    cc = f.copy()
    dd = np.zeros_like(f)
    passes = np.zeros(zarr.shape, dtype=int)
    g_prev2, g_prev1 = None, 0.0
    for n in range(1, max_depth + 1):
        if n == 1:
            an = np.ones_like(zarr)
        else:
            an = -(1.0 - g_prev2) * g_prev1 * zarr
        dd = 1.0 + an * dd
        dd[dd == 0] = _TINY
        cc = 1.0 + an / cc
        cc[cc == 0] = _TINY
        dd = 1.0 / dd
        delta = cc * dd
        f = f * delta
        ok = np.abs(delta - 1.0) <= tol
        passes = np.where(ok, passes + 1, 0)
        if np.all(passes >= 2):
            break
        g_prev2, g_prev1 = g_prev1, g_coefficient(a, b, c, n)
    else:
        raise CFNotConverged("continued fraction did not converge within %d levels" % max_depth)
    return complex(f[0]) if scalar else f.reshape(np.shape(z))


def wall_bounds_at_minus1(p):
    """Enclosure c/(b+c) <= (G/F)(-1) <= (2c-b)/(2c) on the parameter box.

    Examples
    --------
    >>> from hypconv.hyp2f1 import Params
    >>> wall_bounds_at_minus1(Params(1, 1, 3))
    CircleBound(lower=0.75, upper=0.8333333333333334)
    """
    _require_box(p)
    return CircleBound(p.c / (p.b + p.c), (2.0 * p.c - p.b) / (2.0 * p.c))


def cauchy_factor(p, z, tol=1e-15):
    """1 / ((1 - z)(1 - a + a G/F)), a transform of a probability measure.

    Requires 0 < a <= 1, 0 <= b <= c and a <= c.  Equals 1 at z = 0 and has
    real part above 1/2 on the disk.  ``z`` may be an array; z = -1 is
    accepted since the fraction converges there.
    """
    if not (0.0 < p.a <= 1.0 and 0.0 <= p.b <= p.c and p.a <= p.c):
        raise PreconditionViolated(
            "cauchy_factor needs 0 < a <= 1, 0 <= b <= c, a <= c; got (%g, %g, %g)" % (p.a, p.b, p.c)
        )
    ratio = eval_ratio_cf(p, z, tol)
    zz = np.asarray(z, dtype=complex)
    out = 1.0 / ((1.0 - zz) * (1.0 - p.a + p.a * ratio))
    return complex(out) if np.ndim(out) == 0 else out
