"""Order of convexity of z 2F1(a, b; c; z): W(z), M(z) and closed forms.

For f(z) = z F(z) the order of convexity is

    kappa = 1 + inf_{|z|<1} Re z f''(z) / f'(z) = inf Re W(z),

and W splits as a Moebius term plus

    M(z) = (c - 2 + (1-a)(1-b) z) / ((1 - z)(1 - a + a G/F)),

with G = 2F1(a+1, b; c; z).  The closed-form rules below are keyed by
descriptive identifiers (see :data:`RULES`); each one lists its atomic
conditions so that a caller can see exactly why a rule did or did not fire.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import engine
from .cfrac import cauchy_factor, eval_ratio_cf, in_box
from .errors import (
    CaseNotApplicable,
    DerivativeZero,
    InconsistencyError,
    LimitNotFinite,
    PreconditionViolated,
)
from .hyp2f1 import Params, eval_auto

__all__ = [
    "Kind",
    "OrderOfConvexity",
    "RegimeMatch",
    "RULES",
    "PREDICATES",
    "W_eval",
    "M_eval",
    "M_limit_at_1",
    "kappa_closed_form",
    "evaluate_rule",
    "lower_bound_for",
    "convexity_predicates",
    "reference_kappa_c2",
    "p_value",
]

# The continued fraction is not used closer than this to z = 1.
_CF_NEAR_ONE = 1e-3

# Relative size of (zF)' below which it is treated as a zero.
DERIVATIVE_ZERO_RTOL = 1e-12


class Kind(str, enum.Enum):
    FINITE = "finite"
    MINUS_INFINITY = "minus-infinity"
    UNDEFINED = "undefined"
    LOWER_BOUND = "lower-bound"
    UNCOVERED = "uncovered"


@dataclass(frozen=True)
class OrderOfConvexity:
    """Outcome of a kappa computation.

    ``value`` is set for ``FINITE`` and ``LOWER_BOUND``; ``uncertainty``
    is only filled in by the numerical oracle.
    """

    kind: Kind
    value: float = None
    uncertainty: float = None
    note: str = ""

    @property
    def is_finite(self):
        return self.kind is Kind.FINITE

    def __str__(self):
        if self.kind is Kind.FINITE:
            s = "%.12g" % self.value
            if self.uncertainty is not None:
                s += " +- %.2g" % self.uncertainty
            return s
        if self.kind is Kind.LOWER_BOUND:
            return ">= %.12g" % self.value
        return self.kind.value


@dataclass(frozen=True)
class RegimeMatch:
    """Which rule produced a closed-form answer, and why.

    ``preconditions`` lists (text, holds) pairs for the chosen rule, or one
    summary entry per rule when nothing fired.  ``also_fired`` holds
    (rule, value) for every other rule that applied; exact values were
    checked against the primary one.
    """

    rule: str
    preconditions: tuple
    p_value: float
    also_fired: tuple = field(default_factory=tuple)


def p_value(p):
    """c - 1 - a - b + ab, equal to c - 2 + (1-a)(1-b)."""
    return p.c - 1.0 - p.a - p.b + p.a * p.b


# ---------------------------------------------------------------- W and M


def _f_df(p, z):
    return engine.hyp2f1_d(p.a, p.b, p.c, z)


def _as_array(z):
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def W_eval(p, z, method="direct", tol=1e-15):
    """W(z) = 1 + z f''(z)/f'(z) for f = z F.

    Parameters
    ----------
    p : Params
    z : complex or array_like
        Points of the closed disk other than z = 1.
    method : {"direct", "decomposed"}
        ``direct`` uses F, F' and the hypergeometric ODE for F''.
        ``decomposed`` adds the Moebius term (3-c+(a+b-2)z)/(1-z) to
        :func:`M_eval`, an independent route through G/F.

    Raises
    ------
    DerivativeZero
        If (zF)' vanishes to relative precision at some point.

    Examples
    --------
    >>> round(W_eval(Params(1, 1, 2), 0.5).real, 12)
    2.0
    """
    zz, scalar = _as_array(z)
    zz = np.atleast_1d(zz)
    if method == "direct":
        f, df = _f_df(p, zz)
        a, b, c = p.a, p.b, p.c
        w = 1.0 - zz
        fp = f + zz * df
        scale = np.abs(f) + np.abs(zz * df)
        _check_zero(fp, scale, zz)
        # c - (a+b+1) z, arranged to stay accurate near z = 1.
        q = (c - a - b - 1.0) + (a + b + 1.0) * w
        z2f2 = zz * (a * b * f - q * df) / w
        out = 1.0 + (2.0 * zz * df + z2f2) / fp
    elif method == "decomposed":
        mob = (3.0 - p.c + (p.a + p.b - 2.0) * zz) / (1.0 - zz)
        out = mob + M_eval(p, zz, tol)
    else:
        raise ValueError("method must be 'direct' or 'decomposed', got %r" % method)
    return complex(out[0]) if scalar else out.reshape(np.shape(z))


def _check_zero(fp, scale, zz):
    bad = np.abs(fp) <= DERIVATIVE_ZERO_RTOL * scale
    if bad.any():
        loc = complex(zz[np.argmax(bad)])
        raise DerivativeZero("(zF)' vanishes near z = %s" % loc, location=loc)


def M_eval(p, z, tol=1e-15, via="auto"):
    """M(z) = (c-2+(1-a)(1-b) z) / ((1-z)(1 - a + a G/F)).

    Parameters
    ----------
    via : {"auto", "cf", "ratio"}
        ``cf`` uses the continued fraction (needs 0 < a <= 1, 0 <= b <= c,
        a <= c); ``ratio`` divides two evaluations of 2F1; ``auto`` takes
        the continued fraction whenever it applies, except within 1e-3 of
        z = 1 where its convergence slows down.

    Examples
    --------
    >>> M_eval(Params(1, 1, 2), 0.3)
    0j
    """
    zz, scalar = _as_array(z)
    zz = np.atleast_1d(zz)
    a, b, c = p.a, p.b, p.c
    num = c - 2.0 + (1.0 - a) * (1.0 - b) * zz
    if via not in ("auto", "cf", "ratio"):
        raise ValueError("via must be 'auto', 'cf' or 'ratio', got %r" % via)
    cf_ok = 0.0 < a <= 1.0 and 0.0 <= b <= c and a <= c
    if via == "cf":
        use_cf = np.ones(zz.shape, dtype=bool)
    elif via == "auto" and cf_ok:
        use_cf = np.abs(1.0 - zz) >= _CF_NEAR_ONE
    else:
        use_cf = np.zeros(zz.shape, dtype=bool)
    out = np.empty_like(zz)
    if use_cf.any():
        out[use_cf] = num[use_cf] * cauchy_factor(p, zz[use_cf], tol)
    rest = ~use_cf
    if rest.any():
        zr = zz[rest]
        f, _ = _f_df(p, zr)
        g, _ = engine.hyp2f1_d(a + 1.0, b, c, zr)
        # (1 - a) F + a G is (zF)'.
        fp = (1.0 - a) * f + a * g
        _check_zero(fp, np.abs(f) + np.abs(a * g), zr)
        out[rest] = num[rest] * f / ((1.0 - zr) * fp)
    return complex(out[0]) if scalar else out.reshape(np.shape(z))


def M_limit_at_1(p):
    """Limit of M(z) as z -> 1 inside the disk, when c < a + b.

    (1 - z)(1 - a + a G/F) tends to a + b - c, so the limit is
    (c - 2 + (1-a)(1-b)) / (a + b - c).

    Examples
    --------
    >>> M_limit_at_1(Params(0.75, 1.5, 2))
    -0.5
    """
    if not p.c < p.a + p.b:
        raise LimitNotFinite("M has no finite limit at 1 unless c < a + b (c - a - b = %g)" % p.m)
    if p.a == 0.0 or not p.admissible:
        raise LimitNotFinite("limit at 1 needs a != 0 and admissible parameters")
    return p_value(p) / (p.a + p.b - p.c)


# ---------------------------------------------------------------- rules


def _ratio_at_minus1(p):
    """(G/F)(-1), by continued fraction and by the Pfaff route, compared."""
    if not in_box(p):
        raise PreconditionViolated("ratio at -1 needs the continued-fraction box")
    cf = eval_ratio_cf(p, -1.0).real
    f = eval_auto(p, -1.0).value.real
    g = eval_auto(p.shifted(da=1), -1.0).value.real
    direct = g / f
    if abs(cf - direct) > 1e-10 * abs(cf):
        raise InconsistencyError(
            "G/F at -1: continued fraction %.17g vs transformed series %.17g" % (cf, direct)
        )
    return cf


def _a1_case1(b, c):
    # kappa = (4-b-c)/2 + (c-2)/2 * F(1,b;c;-1) / F(2,b;c;-1)
    ratio = _ratio_at_minus1(Params(1.0, b, c))
    return (4.0 - b - c) / 2.0 + (c - 2.0) / 2.0 / ratio


def _a1_case2(b, c):
    return (c - b) * (c + b - 3.0) / (2.0 * (1.0 + b - c))


def _cvx_case1(a, b, c):
    # (5-c-a-b)/2 + M(-1); at z = -1 the numerator is c - 2 - (1-a)(1-b).
    p = Params(a, b, c)
    ratio = _ratio_at_minus1(p)
    m_minus1 = (c - 2.0 - (1.0 - a) * (1.0 - b)) / (2.0 * (1.0 - a + a * ratio))
    return (5.0 - c - a - b) / 2.0 + m_minus1


def _cvx_case2(a, b, c):
    return (5.0 - c - a - b) / 2.0 + M_limit_at_1(Params(a, b, c))


def _above_balance(a, b, c):
    return (c * c - a * a - b * b + 3.0 * (a + b - c) - 2.0) / (2.0 * (a + b - c))


def _bound_large_c(a, b, c):
    ab = a * b
    return ((4.0 - ab) * c - ab * (5.0 - a - b)) / (2.0 * (2.0 * c - ab))


def _bound_mid_c(a, b, c):
    return (2.0 * c + (a * a - 5.0 * a + 2.0) * b) / (2.0 * (b + c - a * b))


@dataclass(frozen=True)
class Rule:
    """A closed-form statement.

    ``conditions(a, b, c)`` returns (text, holds) pairs; the rule fires
    when all hold.  ``kind`` is what the rule yields and ``formula`` its
    value (``None`` for minus infinity).  ``symmetric`` rules are also
    tried with a and b exchanged.
    """

    name: str
    kind: Kind
    conditions: object
    formula: object = None
    symmetric: bool = True
    needs_admissible: bool = False
    summary: str = ""

    def check(self, a, b, c):
        return [(text, bool(holds)) for text, holds in self.conditions(a, b, c)]


def _conds_mi1(a, b, c):
    ab = a * b
    return [("0 < ab < 1", 0 < ab < 1), ("a + b <= c < 1 + a + b - ab", a + b <= c < 1 + a + b - ab)]


def _conds_mi2(a, b, c):
    ab = a * b
    return [("ab < 0", ab < 0), ("a + b <= c < 1 + a + b", a + b <= c < 1 + a + b)]


def _conds_a1_case1(a, b, c):
    return [("a = 1", a == 1.0), ("0 < b <= c", 0 < b <= c), ("c >= 2", c >= 2)]


def _conds_a1_case2(a, b, c):
    return [("a = 1", a == 1.0), ("0 < b <= c", 0 < b <= c), ("1 <= c < min(2, 1 + b)", 1 <= c < min(2.0, 1 + b))]


def _conds_cvx_base(a, b, c):
    return [("0 < a < 1", 0 < a < 1), ("a <= c", a <= c), ("0 <= b <= c", 0 <= b <= c)]


def _conds_cvx_case1(a, b, c):
    pv = c - 2 + (1 - a) * (1 - b)
    return _conds_cvx_base(a, b, c) + [("b < 1", b < 1), ("c - 2 + (1-a)(1-b) >= 0", pv >= 0)]


def _conds_cvx_case2(a, b, c):
    pv = c - 2 + (1 - a) * (1 - b)
    return _conds_cvx_base(a, b, c) + [
        ("b > 1", b > 1),
        ("c - 2 + (1-a)(1-b) <= 0", pv <= 0),
        ("c < a + b (finite limit of M at 1)", c < a + b),
    ]


def _conds_above_balance(a, b, c):
    return [
        ("0 < a < 1 < b <= c", 0 < a < 1 < b <= c),
        ("c < min(a + b, 1 + a + b - ab)", c < min(a + b, 1 + a + b - a * b)),
    ]


def _conds_case1_base(a, b, c):
    return [("0 < a < 1", 0 < a < 1), ("a <= c", a <= c), ("0 < b <= min(1, c)", 0 < b <= min(1.0, c))]


def _conds_bound_large(a, b, c):
    return _conds_case1_base(a, b, c) + [("c >= 3 - a - b + ab", c >= 3 - a - b + a * b)]


def _conds_bound_mid(a, b, c):
    ab = a * b
    return _conds_case1_base(a, b, c) + [("1 + a + b - ab <= c < 3 - a - b + ab", 1 + a + b - ab <= c < 3 - a - b + ab)]


# Priority order: minus-infinity windows, exact values, explicit
# rational formula, lower bounds.
RULES = (
    Rule("minus-infinity-small-product", Kind.MINUS_INFINITY, _conds_mi1, needs_admissible=True,
         summary="0 < ab < 1 and a + b <= c < 1 + a + b - ab"),
    Rule("minus-infinity-negative-product", Kind.MINUS_INFINITY, _conds_mi2, needs_admissible=True,
         summary="ab < 0 and a + b <= c < 1 + a + b"),
    Rule("a-one-large-c", Kind.FINITE, _conds_a1_case1, lambda a, b, c: _a1_case1(b, c),
         summary="a = 1, 0 < b <= c, c >= 2"),
    Rule("a-one-small-c", Kind.FINITE, _conds_a1_case2, lambda a, b, c: _a1_case2(b, c),
         summary="a = 1, 0 < b <= c, 1 <= c < min(2, 1 + b)"),
    Rule("boundary-minus-one", Kind.FINITE, _conds_cvx_case1, _cvx_case1,
         summary="0 < a < 1, a <= c, 0 <= b < 1, c - 2 + (1-a)(1-b) >= 0"),
    Rule("boundary-plus-one", Kind.FINITE, _conds_cvx_case2, _cvx_case2, needs_admissible=True,
         summary="0 < a < 1, a <= c, 1 < b <= c, c - 2 + (1-a)(1-b) <= 0, c < a + b"),
    Rule("explicit-above-balance", Kind.FINITE, _conds_above_balance, _above_balance,
         summary="0 < a < 1 < b <= c < min(a + b, 1 + a + b - ab)"),
    Rule("lower-bound-large-c", Kind.LOWER_BOUND, _conds_bound_large, _bound_large_c,
         summary="0 < a < 1, a <= c, 0 < b <= min(1, c), c >= 3 - a - b + ab"),
    Rule("lower-bound-mid-c", Kind.LOWER_BOUND, _conds_bound_mid, _bound_mid_c,
         summary="0 < a < 1, a <= c, 0 < b <= min(1, c), 1 + a + b - ab <= c < 3 - a - b + ab"),
)
_RULE_BY_NAME = {r.name: r for r in RULES}


def _orientations(rule, p):
    yield p.a, p.b, p.c
    if rule.symmetric and p.a != p.b:
        yield p.b, p.a, p.c


def _match(rule, p):
    """Return (a, b, c, conditions) for the first orientation that fires."""
    first = None
    for a, b, c in _orientations(rule, p):
        conds = rule.check(a, b, c)
        if rule.needs_admissible:
            conds = [("%s" % k.replace("_", " "), v) for k, v in p.flags.items()] + conds
        if first is None:
            first = (a, b, c, conds)
        if all(h for _, h in conds):
            return True, (a, b, c, conds)
    return False, first


def evaluate_rule(p, name):
    """Value of one named rule at ``p``.

    Returns ``None`` for minus-infinity rules.

    Raises
    ------
    CaseNotApplicable
        If the rule's conditions fail for both orderings of a and b.

    Examples
    --------
    >>> evaluate_rule(Params(0.75, 1.5, 2), "explicit-above-balance")
    -0.125
    """
    rule = _RULE_BY_NAME[name]
    ok, (a, b, c, conds) = _match(rule, p)
    if not ok:
        failed = "; ".join(t for t, h in conds if not h)
        raise CaseNotApplicable("%s does not apply: %s" % (name, failed))
    return None if rule.formula is None else rule.formula(a, b, c)


def lower_bound_for(p):
    """(rule, bound) for the lower-bound rules, or ``None`` if neither applies."""
    for name in ("lower-bound-large-c", "lower-bound-mid-c"):
        try:
            return name, evaluate_rule(p, name)
        except CaseNotApplicable:
            continue
    return None


def kappa_closed_form(p, tol=1e-9):
    """Closed-form order of convexity and the rule that produced it.

    Every rule is tested.  The highest-priority one that fires decides the
    answer; all other exact rules that fire must agree with it within
    ``tol`` (absolute), and a lower bound may not exceed an exact value.

    Returns
    -------
    (OrderOfConvexity, RegimeMatch)

    Raises
    ------
    InconsistencyError
        When overlapping rules disagree.

    Examples
    --------
    >>> k, r = kappa_closed_form(Params(1, 1, 1.5))
    >>> k.value, r.rule
    (-0.25, 'a-one-small-c')
    """
    fired = []
    summaries = []
    for rule in RULES:
        ok, (a, b, c, conds) = _match(rule, p)
        summaries.append((rule.summary, False))
        if ok:
            value = None if rule.formula is None else float(rule.formula(a, b, c))
            fired.append((rule, value, conds))
    pv = p_value(p)
    if not fired:
        kappa = OrderOfConvexity(Kind.UNCOVERED)
        return kappa, RegimeMatch("none", tuple(summaries), pv)

    primary, value, conds = fired[0]
    others = tuple((r.name, v) for r, v, _ in fired[1:])
    for rule, v, _ in fired[1:]:
        if primary.kind is Kind.MINUS_INFINITY:
            if rule.kind is Kind.FINITE:
                raise InconsistencyError("%s gives -inf but %s gives %.12g" % (primary.name, rule.name, v))
        elif rule.kind is Kind.FINITE and primary.kind is Kind.FINITE:
            if abs(v - value) > tol * max(1.0, abs(value)):
                raise InconsistencyError(
                    "%s = %.15g disagrees with %s = %.15g" % (primary.name, value, rule.name, v)
                )
        elif rule.kind is Kind.LOWER_BOUND and primary.kind is Kind.FINITE:
            if v > value + tol:
                raise InconsistencyError(
                    "lower bound %s = %.15g exceeds exact %s = %.15g" % (rule.name, v, primary.name, value)
                )
    if primary.kind is Kind.MINUS_INFINITY:
        kappa = OrderOfConvexity(Kind.MINUS_INFINITY)
    else:
        kappa = OrderOfConvexity(primary.kind, value)
    return kappa, RegimeMatch(primary.name, tuple(conds), pv, others)


# ---------------------------------------------------------------- predicates


def _threshold_ab_above_1(a, b, cubic_b=False):
    # Root of c^2 - 3c - (a^2 + b^2 - 3a - 3b + 2) = 0, where the explicit
    # order above changes sign.  ``cubic_b`` keeps a b^3 variant that
    # contradicts that sign analysis; see the README.
    bb = b**3 if cubic_b else b * b
    disc = 9.0 + 4.0 * (a * a + bb - 3.0 * a - 3.0 * b + 2.0)
    if disc < 0:
        return -math.inf
    return (3.0 + math.sqrt(disc)) / 2.0


def _pred_convex_small_ab(a, b, c, **kw):
    return 0 < a < 1 and 0 < b < 1 and c >= 1 + a + b - a * b


def _pred_nonconvex_ab_below(a, b, c, **kw):
    return 0 < a < 1 < b <= c and a * b < 1 and c < a + b


def _pred_nonconvex_ab_above(a, b, c, cubic_b=False, **kw):
    return (
        0 < a < 1 < b <= c
        and a * b > 1
        and c < min(1 + a + b - a * b, _threshold_ab_above_1(a, b, cubic_b))
    )


def _pred_zero_balanced(a, b, c, **kw):
    p = Params(a, b, c)
    return c == a + b and p.flags["a_not_terminating"] and p.flags["b_not_terminating"] and a * b < 1


def _pred_a1_small_b(a, b, c, **kw):
    return a == 1 and 0 < b <= c and 0 <= b <= 1 and c >= 2


def _pred_a1_mid_b(a, b, c, **kw):
    # Convex up to the zero of 2c + 2b(2-c) - b^2 in c, i.e. (4b-b^2)/(2b-2).
    return a == 1 and 0 < b <= c and 1 < b < 2 <= c < (4 * b - b * b) / (2 * b - 2)


def _pred_a1_small_c(a, b, c, **kw):
    return a == 1 and 0 < b <= c and 1 <= c < min(2, 1 + b) and c >= 3 - b


# (name, verdict, predicate)
PREDICATES = (
    ("convex-small-ab", "convex", _pred_convex_small_ab),
    ("nonconvex-product-below-one", "not convex", _pred_nonconvex_ab_below),
    ("nonconvex-product-above-one", "not convex", _pred_nonconvex_ab_above),
    ("zero-balanced-nonconvex", "not convex", _pred_zero_balanced),
    ("a-one-convex-small-b", "convex", _pred_a1_small_b),
    ("a-one-convex-mid-b", "convex", _pred_a1_mid_b),
    ("a-one-convex-small-c", "convex", _pred_a1_small_c),
)


def convexity_predicates(p, cubic_b=False):
    """Sufficient conditions for (non)convexity that hold at ``p``.

    Returns
    -------
    list of (name, verdict)
        ``verdict`` is ``"convex"`` or ``"not convex"``; only predicates
        that fire (in either order of a and b) are listed.

    Examples
    --------
    >>> convexity_predicates(Params(0.5, 0.5, 1.75))
    [('convex-small-ab', 'convex')]
    """
    out = []
    for name, verdict, pred in PREDICATES:
        if pred(p.a, p.b, p.c, cubic_b=cubic_b) or pred(p.b, p.a, p.c, cubic_b=cubic_b):
            out.append((name, verdict))
    return out


# ---------------------------------------------------------------- c = 2 reference


def reference_kappa_c2(p):
    """Independent closed forms for c = 2 (used only as a cross-check).

    Five cases, tried for both orders of a and b:

    * ``c2-a``: 0 < a <= b <= 1, kappa = 1 - F'(a,b;1;-1)/F(a,b;1;-1);
    * ``c2-b``: 0 < -a <= b <= 1, minus infinity;
    * ``c2-c``: 0 < b < -a <= 1, kappa = 1 - ab/(a+b);
    * ``c2-d``: 0 < a < 1 < b <= 2 - a, minus infinity;
    * ``c2-e``: 0 < a <= 1 <= b <= 2 < a + b,
      kappa = 1 + (1-a)(1-b)/(a+b-2) + (1-a-b)/2.

    The case label is stored in ``note``.

    Raises
    ------
    CaseNotApplicable
    """
    if p.c != 2.0:
        raise CaseNotApplicable("reference formulas need c = 2, got c = %g" % p.c)
    for a, b in ((p.a, p.b), (p.b, p.a)):
        if 0 < a <= b <= 1:
            f, df = engine.hyp2f1_d(a, b, 1.0, np.array([-1.0 + 0j]))
            return OrderOfConvexity(Kind.FINITE, float(1.0 - (df[0] / f[0]).real), note="c2-a")
        if 0 < -a <= b <= 1:
            return OrderOfConvexity(Kind.MINUS_INFINITY, note="c2-b")
        if 0 < b < -a <= 1:
            return OrderOfConvexity(Kind.FINITE, 1.0 - a * b / (a + b), note="c2-c")
        if 0 < a < 1 < b <= 2 - a:
            return OrderOfConvexity(Kind.MINUS_INFINITY, note="c2-d")
        if 0 < a <= 1 <= b <= 2 < a + b:
            value = 1.0 + (1.0 - a) * (1.0 - b) / (a + b - 2.0) + (1.0 - a - b) / 2.0
            return OrderOfConvexity(Kind.FINITE, value, note="c2-e")
    raise CaseNotApplicable("no c = 2 reference case covers (a, b) = (%g, %g)" % (p.a, p.b))
