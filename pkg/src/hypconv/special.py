"""Real-argument Gamma, digamma and Pochhammer primitives.

Accuracy targets are modest (about 1e-13 relative for |x| <= 50); the
convexity formulas only ever need these functions at small real arguments.
"""

import math

__all__ = [
    "PoleError",
    "gamma_real",
    "rgamma_real",
    "digamma_real",
    "pochhammer",
    "is_nonpositive_integer",
    "EULER_GAMMA",
]

EULER_GAMMA = 0.57721566490153286061

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# B_{2k} / (2k) for the digamma asymptotic tail, k = 1..7.
_DIGAMMA_TAIL = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


class PoleError(ValueError):
    """Raised when a function is evaluated on its pole set {0, -1, -2, ...}."""


def is_nonpositive_integer(x):
    """True if ``x`` is one of 0, -1, -2, ..."""
    return x <= 0 and float(x).is_integer()


def _sinpi(x):
    # sin(pi x) with argument reduction so large |x| keeps full relative accuracy.
    r = math.fmod(x, 2.0)
    if r > 1.0:
        r -= 2.0
    elif r < -1.0:
        r += 2.0
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    return math.sin(math.pi * r)


def _cotpi(x):
    r = math.fmod(x, 1.0)
    return math.cos(math.pi * r) / math.sin(math.pi * r)


def gamma_real(x):
    """Gamma function of a real argument.

    Parameters
    ----------
    x : float
        Any finite real that is not a nonpositive integer.

    Returns
    -------
    float

    Raises
    ------
    PoleError
        If ``x`` is 0, -1, -2, ...

    Examples
    --------
    >>> round(gamma_real(5.0), 10)
    24.0
    >>> round(gamma_real(0.5) ** 2, 12) == round(math.pi, 12)
    True
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("gamma_real needs a finite argument, got %r" % x)
    if is_nonpositive_integer(x):
        raise PoleError("Gamma has a pole at x = %g" % x)
    if x < 0.5:
        return math.pi / (_sinpi(x) * gamma_real(1.0 - x))
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    # t**(x+0.5) * exp(-t) split in two halves to delay overflow.
    half = t ** (0.5 * (x + 0.5))
    return _SQRT_2PI * half * (half * math.exp(-t)) * acc


def rgamma_real(x):
    """Reciprocal Gamma, 1/Gamma(x); zero on the pole set instead of raising."""
    if is_nonpositive_integer(x):
        return 0.0
    return 1.0 / gamma_real(x)


def digamma_real(x):
    """Digamma function psi(x) = Gamma'(x)/Gamma(x) for real ``x``.

    Upward recurrence to x >= 6, then the Stirling-type asymptotic series.
    Negative arguments go through the reflection formula.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("digamma_real needs a finite argument, got %r" % x)
    if is_nonpositive_integer(x):
        raise PoleError("digamma has a pole at x = %g" % x)
    if x < 0.0:
        return digamma_real(1.0 - x) - math.pi * _cotpi(x)
    shift = 0.0
    while x < 6.0:
        shift -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = 0.0
    power = inv2
    for coef in _DIGAMMA_TAIL:
        tail += coef * power
        power *= inv2
    return shift + math.log(x) - 0.5 / x - tail


def pochhammer(a, n):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.

    Integer ``a`` is multiplied in exact integer arithmetic.
    """
    n = int(n)
    if n < 0:
        raise ValueError("pochhammer needs n >= 0, got %d" % n)
    if isinstance(a, int) or (isinstance(a, float) and a.is_integer() and abs(a) < 2**53):
        a = int(a)
        out = 1
        for k in range(n):
            out *= a + k
        return float(out)
    out = 1.0
    for k in range(n):
        out *= a + k
    return out
