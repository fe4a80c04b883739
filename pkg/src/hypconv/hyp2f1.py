"""Scalar evaluation of 2F1(a, b; c; z) with term counts and error estimates.

The functions here take a :class:`Params` triple and one complex point and
return an :class:`EvalResult`.  Vectorised work goes through
:mod:`hypconv.engine`, which shares the same summation code.
"""

import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import engine
from .errors import (
    CaseNotApplicable,
    ConnectionUnavailable,
    CPole,
    NoConvergence,
    NotConvergentAtOne,
    TermCapExceeded,
)
from .special import digamma_real, gamma_real, is_nonpositive_integer, rgamma_real

__all__ = [
    "Params",
    "EvalResult",
    "Triple",
    "AsymptoticExpansion",
    "series_eval",
    "eval_auto",
    "contiguous_triple",
    "derivative_2f1",
    "value_at_one",
    "value_at_minus_one",
    "ramanujan_R",
    "ratio_asymptotic",
    "max_terms",
]

DEFAULT_TOL = 1e-15
_DEFAULT_MAX_TERMS = 1_000_000
_EPS = float(np.finfo(float).eps)
# Below this |1 - z| the expansion about z = 1 is used.
_SWITCH_RADIUS = 0.5
# Plain series is only trusted up to this modulus; beyond it the
# transformations in the engine take over.
_SERIES_RADIUS = 0.9


def max_terms():
    """Series term cap, overridable through ``HYPCONV_MAX_TERMS``."""
    raw = os.environ.get("HYPCONV_MAX_TERMS")
    if raw is None:
        return _DEFAULT_MAX_TERMS
    cap = int(raw)
    if cap < 1:
        raise ValueError("HYPCONV_MAX_TERMS must be a positive integer")
    return cap


def _is_negative_integer(x):
    return x < 0 and x == math.floor(x)


@dataclass(frozen=True)
class Params:
    """Real parameter triple (a, b, c).

    Construction fails only when ``c`` is a pole or a value is not finite.
    Degenerate triples (a or b in {0, -1, -2, ...}, or c - a, c - b in
    {-1, -2, ...}) are allowed but reported through :attr:`flags`.
    c - a = 0 is admissible: then F = (1 - z)^(-b) exactly.

    Examples
    --------
    >>> Params(1, 1, 3).admissible
    True
    >>> Params(-2, 1, 1).violated()
    ['a_not_terminating']
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError("parameter %s must be finite, got %r" % (name, value))
            object.__setattr__(self, name, value)
        if is_nonpositive_integer(self.c):
            raise CPole("c = %g is a pole of 2F1" % self.c)

    @property
    def flags(self):
        """Admissibility flags; ``True`` means the condition holds."""
        return {
            "a_not_terminating": not is_nonpositive_integer(self.a),
            "b_not_terminating": not is_nonpositive_integer(self.b),
            "c_minus_a_ok": not _is_negative_integer(self.c - self.a),
            "c_minus_b_ok": not _is_negative_integer(self.c - self.b),
        }

    @property
    def admissible(self):
        return all(self.flags.values())

    def violated(self):
        """Names of the admissibility flags that fail."""
        return [k for k, v in self.flags.items() if not v]

    @property
    def m(self):
        """c - a - b, the exponent governing behaviour at z = 1."""
        return self.c - self.a - self.b

    @property
    def terminating(self):
        return is_nonpositive_integer(self.a) or is_nonpositive_integer(self.b)

    def swapped(self):
        return Params(self.b, self.a, self.c)

    def shifted(self, da=0, db=0, dc=0):
        return Params(self.a + da, self.b + db, self.c + dc)


@dataclass(frozen=True)
class EvalResult:
    """A function value with its bookkeeping.

    ``error_bound`` is the tail estimate of the truncated sums plus a
    running rounding estimate; for the continuation route it is an
    estimate rather than a strict bound.
    """

    value: complex
    terms_used: int
    error_bound: float
    method: str
    flags: tuple = field(default_factory=tuple)


@dataclass(frozen=True)
class Triple:
    """F = 2F1(a,b;c;z), G = 2F1(a+1,b;c;z), H = 2F1(a+1,b+1;c+1;z)."""

    F: complex
    G: complex
    H: complex
    error_bound: float
    bounds: tuple = (0.0, 0.0, 0.0)

    def __iter__(self):
        return iter((self.F, self.G, self.H))


@dataclass(frozen=True)
class AsymptoticExpansion:
    """Leading behaviour of G/F as z -> 1.

    ``case`` is ``"below"`` (a+b < c < a+b+1), ``"balanced"`` (c = a+b)
    or ``"above"`` (c < a+b).  ``A`` is the coefficient of the leading
    term and ``epsilon`` the remainder exponent (``below`` only).
    """

    case: str
    alpha: float
    epsilon: float
    A: float
    a: float
    description: str

    def leading(self, z):
        """Evaluate the leading term at ``z`` (scalar or array)."""
        w = 1.0 - np.asarray(z, dtype=complex)
        if self.case == "below":
            out = self.A * w ** (self.alpha - 1.0)
        elif self.case == "balanced":
            out = 1.0 / (-self.a * w * np.log(w))
        else:
            out = self.A / w
        return out if np.ndim(out) else complex(out)


def _check_disk(z, closed):
    r = abs(z)
    if closed:
        if r > 1.0 + 1e-14:
            raise NoConvergence("|z| = %.17g lies outside the closed unit disk" % r)
        if z == 1.0:
            raise NoConvergence("z = 1 is the branch point")
    elif r >= 1.0:
        raise NoConvergence("series needs |z| < 1, got |z| = %.17g" % r)


def series_eval(p, z, tol=DEFAULT_TOL):
    """Sum the defining power series at one point.

    Parameters
    ----------
    p : Params
    z : complex
        |z| < 1.
    tol : float
        Stop once three consecutive terms (and at least eight in total)
        are below ``tol`` times the partial sum.

    Returns
    -------
    EvalResult
        ``method`` is ``"polynomial"`` for terminating series.

    Raises
    ------
    NoConvergence
        If |z| >= 1.
    TermCapExceeded
        If the cap from :func:`max_terms` is hit; the partial result is
        attached to the exception.
    """
    z = complex(z)
    _check_disk(z, closed=False)
    a, b, c = p.a, p.b, p.c
    cap = max_terms()
    term = 1.0 + 0j
    total = 1.0 + 0j
    abs_sum = 1.0
    peak = 1.0
    small = 0
    ratio = 0.0
    n = 0
    while True:
        coef = (a + n) * (b + n) / ((c + n) * (n + 1.0))
        term *= coef * z
        total += term
        n += 1
        at = abs(term)
        abs_sum += at
        peak = max(peak, abs(total))
        if coef == 0.0:
            bound = 2.0 * _EPS * n * abs_sum
            return EvalResult(total, n, bound, "polynomial")
        ratio = abs(coef * z)
        if at <= tol * abs(total):
            small += 1
            if small >= 3 and n >= 8:
                break
        else:
            small = 0
        if n + 1 >= cap:
            q = max(ratio, abs(z))
            partial = EvalResult(total, n + 1, at * q / (1.0 - q) + _EPS * n * peak, "series", ("term-cap",))
            raise TermCapExceeded("series hit the %d-term cap at |z| = %.6g" % (cap, abs(z)), partial)
    # The term ratio tends to |z|; use whichever of the two is larger.
    q = max(ratio, abs(z))
    bound = at * q / (1.0 - q) + _EPS * n * peak
    return EvalResult(total, n + 1, bound, "series")


def _engine_eval(p, z):
    info = {}
    f, _ = engine.hyp2f1_d(p.a, p.b, p.c, np.array([z]), info=info)
    method = sorted(info["methods"])[0]
    return complex(f[0]), info["terms"], float(info["err"]), method


def eval_auto(p, z, tol=DEFAULT_TOL, strict=False):
    """Evaluate 2F1 at one point of the closed disk minus {1}.

    Routing: terminating parameters give the exact polynomial; for
    |1 - z| >= 1/2 and |z| <= 0.9 the plain series is summed; closer to
    z = 1 the expansion in powers of 1 - z is used (logarithmic form when
    c = a + b); the rest of the disk, including the unit circle, goes
    through the Pfaff transformation or Taylor continuation along the ODE.

    Parameters
    ----------
    p : Params
    z : complex
    tol : float
        Tolerance for the series route.  The other routes always sum to
        machine precision.
    strict : bool
        Raise :class:`ConnectionUnavailable` near z = 1 when c - a - b is a
        nonzero integer, instead of switching to continuation.

    Examples
    --------
    >>> r = eval_auto(Params(1, 1, 2), 0.5)
    >>> round(r.value.real, 12) == round(2 * math.log(2), 12)
    True
    """
    z = complex(z)
    _check_disk(z, closed=True)
    if z == 0:
        return EvalResult(1.0 + 0j, 1, 0.0, "series")
    near_one = abs(1.0 - z) < _SWITCH_RADIUS
    if not p.terminating and not near_one and abs(z) <= _SERIES_RADIUS:
        return series_eval(p, z, tol)
    m = p.m
    m_int = abs(m - round(m)) < 1e-3 and m != 0.0
    flags = ()
    if near_one and m_int and not p.terminating:
        if strict:
            raise ConnectionUnavailable(
                "c - a - b = %g is a nonzero integer; the expansion about z = 1 degenerates" % m
            )
        flags = ("connection-unavailable",)
    value, terms, err, method = _engine_eval(p, z)
    return EvalResult(value, terms, err, method, flags)


def contiguous_triple(p, z, tol=DEFAULT_TOL):
    """F, G = 2F1(a+1,b;c;z) and H = 2F1(a+1,b+1;c+1;z) at one point.

    The three satisfy G - F = (b/c) z H.

    Examples
    --------
    >>> t = contiguous_triple(Params(1, 1, 2), -1)
    >>> round(t.G.real, 12)
    0.5
    """
    rf = eval_auto(p, z, tol)
    rg = eval_auto(p.shifted(da=1), z, tol)
    rh = eval_auto(p.shifted(da=1, db=1, dc=1), z, tol)
    scale = abs(p.b / p.c * z)
    bound = rf.error_bound + rg.error_bound + scale * rh.error_bound
    return Triple(rf.value, rg.value, rh.value, bound, (rf.error_bound, rg.error_bound, rh.error_bound))


def derivative_2f1(p, z, tol=DEFAULT_TOL):
    """d/dz 2F1(a,b;c;z) = (ab/c) 2F1(a+1,b+1;c+1;z)."""
    k = p.a * p.b / p.c
    if k == 0.0:
        return 0j
    return k * eval_auto(p.shifted(da=1, db=1, dc=1), z, tol).value


def value_at_one(p):
    """Gauss sum Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)).

    Raises
    ------
    NotConvergentAtOne
        When c - a - b <= 0.

    Examples
    --------
    >>> round(value_at_one(Params(1, 1, 3)), 12)
    2.0
    """
    m = p.m
    if m <= 0:
        raise NotConvergentAtOne("c - a - b = %g <= 0: the series diverges at z = 1" % m)
    if p.a == 0.0 or p.b == 0.0:
        return 1.0
    return gamma_real(p.c) * gamma_real(m) * rgamma_real(p.c - p.a) * rgamma_real(p.c - p.b)


def value_at_minus_one(p, tol=DEFAULT_TOL):
    """2F1(a,b;c;-1) through 2^(-a) 2F1(a, c-b; c; 1/2)."""
    inner = series_eval(Params(p.a, p.c - p.b, p.c), 0.5, tol)
    scale = 2.0 ** (-p.a)
    return EvalResult(
        scale * inner.value, inner.terms_used, scale * inner.error_bound, "pfaff", inner.flags
    )


def ramanujan_R(a, b):
    """Constant 2 psi(1) - psi(a) - psi(b) of the zero-balanced expansion."""
    return 2.0 * digamma_real(1.0) - digamma_real(a) - digamma_real(b)


def ratio_asymptotic(p):
    """Leading term of G/F = 2F1(a+1,b;c;z)/2F1(a,b;c;z) as z -> 1.

    Returns
    -------
    AsymptoticExpansion

    Raises
    ------
    CaseNotApplicable
        When c >= a + b + 1 (G/F stays bounded), when a = 0, or when an
        admissibility flag fails.
    """
    if not p.admissible:
        raise CaseNotApplicable("inadmissible parameters: %s" % ", ".join(p.violated()))
    a, b, c = p.a, p.b, p.c
    if a == 0.0:
        raise CaseNotApplicable("a = 0 makes G/F identically 2F1(1,b;c;z)/1")
    alpha = c - a - b
    if alpha >= 1.0:
        raise CaseNotApplicable("c - a - b = %g >= 1: G/F has a finite limit" % alpha)
    if alpha > 0.0:
        big_a = (
            gamma_real(1.0 - alpha)
            * gamma_real(c - a)
            * gamma_real(c - b)
            * rgamma_real(a + 1.0)
            * rgamma_real(b)
            * rgamma_real(alpha)
        )
        return AsymptoticExpansion(
            "below", alpha, min(2.0 * alpha, 1.0), big_a, a, "A (1-z)^(alpha-1)"
        )
    if alpha == 0.0:
        return AsymptoticExpansion(
            "balanced", 0.0, float("nan"), 1.0 / a, a, "1 / (-a (1-z) log(1-z))"
        )
    return AsymptoticExpansion(
        "above", alpha, float("nan"), (a + b - c) / a, a, "(a+b-c) / (a (1-z))"
    )
