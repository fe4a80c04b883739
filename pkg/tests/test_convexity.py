import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import _reference as ref
import props
from hypconv.convexity import (
    PREDICATES,
    RULES,
    Kind,
    M_eval,
    M_limit_at_1,
    W_eval,
    _threshold_ab_above_1,
    convexity_predicates,
    evaluate_rule,
    kappa_closed_form,
    lower_bound_for,
    p_value,
    reference_kappa_c2,
)
from hypconv.errors import CaseNotApplicable, DerivativeZero, LimitNotFinite
from hypconv.hyp2f1 import Params

LN2 = math.log(2.0)


# ---------------------------------------------------------------- W and M


@pytest.mark.parametrize("method", ["direct", "decomposed"])
def test_w_at_origin(method):
    assert W_eval(Params(0.3, 0.8, 1.7), 0, method) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("method", ["direct", "decomposed"])
@pytest.mark.parametrize("z", [0.5, -0.9, 0.3 + 0.6j])
def test_w_log_case(method, z):
    # z F(1, 1; 2; z) = -log(1 - z), so W = 1/(1 - z).
    assert W_eval(Params(1, 1, 2), z, method) == pytest.approx(1 / (1 - z), rel=1e-13)


def test_w_matches_mpmath():
    rng = np.random.default_rng(41)
    for _ in range(40):
        a, b = rng.uniform(-1, 3, 2)
        c = rng.uniform(0.3, 4)
        z = 0.95 * math.sqrt(rng.uniform()) * np.exp(1j * rng.uniform(-np.pi, np.pi))
        try:
            w = W_eval(Params(a, b, c), z)
        except DerivativeZero:
            continue
        assert w == pytest.approx(ref.W(a, b, c, z), rel=1e-9, abs=1e-9)


def test_w_vectorised():
    z = np.array([0.1, -0.5, 0.2j])
    out = W_eval(Params(1, 1, 2), z)
    assert out.shape == (3,)
    assert out == pytest.approx(1 / (1 - z))


def test_w_derivative_zero():
    # z(1-z)^2 has (zF)' = (1-z)(1-3z).
    with pytest.raises(DerivativeZero):
        W_eval(Params(-2, 1, 1), 1 / 3)


def test_w_methods_agree():
    ok, detail = props.w_methods_agree()
    assert ok, detail


def test_m_examples():
    assert M_eval(Params(0.4, 0.7, 2.6), 0) == pytest.approx(0.6)
    for z in (0.5, -1.0, 0.3j):
        assert M_eval(Params(1, 1, 2), z) == 0
    expected = ref.ratio(0.5, 0.5, 2, -1)
    expected = (-0.25) / (2 * (0.5 + 0.5 * expected))
    assert M_eval(Params(0.5, 0.5, 2), -1).real == pytest.approx(expected.real, rel=1e-13)


def test_m_routes_agree():
    p = Params(0.6, 0.9, 2.3)
    for z in (0.4, -0.95, 0.5 + 0.5j):
        assert M_eval(p, z, via="cf") == pytest.approx(M_eval(p, z, via="ratio"), rel=1e-12)


def test_m_limit_examples():
    assert M_limit_at_1(Params(0.75, 1.5, 2)) == pytest.approx(-0.5)
    assert M_limit_at_1(Params(0.5, 1.5, 1.5)) == pytest.approx(-1.5)
    with pytest.raises(LimitNotFinite):
        M_limit_at_1(Params(0.5, 0.5, 2))


@given(st.floats(0.05, 0.95), st.floats(1.05, 3.0), st.floats(0.01, 0.99))
def test_m_limit_identity(a, b, t):
    c = b + t * a  # b <= c < a + b
    p = Params(a, b, c)
    lhs = (5 - a - b - c) / 2 + M_limit_at_1(p)
    rhs = (c * c - a * a - b * b + 3 * (a + b - c) - 2) / (2 * (a + b - c))
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)


def test_m_limit_matches_approach_to_one():
    # The remainder is of order |1 - z|^(a + b - c) = |1 - z|^(1/4).
    p = Params(0.75, 1.5, 2)
    for w in (1e-12, 1e-12j, 1e-12 * np.exp(1.2j)):
        assert M_eval(p, 1 - w).real == pytest.approx(-0.5, abs=5 * abs(w) ** 0.25)


# ---------------------------------------------------------------- closed forms


@pytest.mark.parametrize(
    "abc, expected",
    [
        ((1, 1, 3), (2 * LN2 - 1) / (2 - 2 * LN2)),
        ((1, 1.5, 3), (2 * math.sqrt(2) - 1) / 4),
        ((1, 2, 3), None),
        ((1, 3, 4), None),
        ((0.5, 0.5, 3), None),
        ((0.5, 0.5, 2), None),
    ],
)
def test_closed_form_matches_w_at_minus_one(abc, expected):
    # Where the infimum sits at z = -1, mpmath's W(-1) is the reference.
    k, _ = kappa_closed_form(Params(*abc))
    assert k.kind is Kind.FINITE
    assert k.value == pytest.approx(ref.kappa_at_minus_one(*abc), abs=1e-10)
    if expected is not None:
        assert k.value == pytest.approx(expected, abs=1e-12)


def test_closed_form_a_one_small_c():
    k, m = kappa_closed_form(Params(1, 1, 1.5))
    assert (k.kind, m.rule) == (Kind.FINITE, "a-one-small-c")
    assert k.value == pytest.approx(-0.25, abs=1e-12)


def test_closed_form_explicit_and_limit_agree():
    k, m = kappa_closed_form(Params(0.75, 1.5, 2))
    assert m.rule == "boundary-plus-one"
    assert k.value == pytest.approx(-0.125, abs=1e-12)
    assert dict(m.also_fired)["explicit-above-balance"] == pytest.approx(-0.125, abs=1e-12)


def test_closed_form_minus_infinity():
    k, m = kappa_closed_form(Params(0.5, 0.5, 1))
    assert k.kind is Kind.MINUS_INFINITY
    assert m.rule == "minus-infinity-small-product"
    assert m.p_value < 0


@pytest.mark.parametrize("abc, rule, bound", [((0.5, 0.5, 3), "lower-bound-large-c", 41 / 46), ((0.5, 0.5, 2), "lower-bound-mid-c", 31 / 36)])
def test_lower_bounds(abc, rule, bound):
    p = Params(*abc)
    assert lower_bound_for(p) == (rule, pytest.approx(bound, abs=1e-12))
    k, m = kappa_closed_form(p)
    # An exact rule also fires here; the bound is reported next to it.
    assert k.kind is Kind.FINITE and k.value >= bound
    assert dict(m.also_fired)[rule] == pytest.approx(bound, abs=1e-12)


def test_uncovered():
    k, m = kappa_closed_form(Params(0.9, 0.95, 0.97))
    assert k.kind is Kind.UNCOVERED
    assert m.rule == "none"
    assert len(m.preconditions) == len(RULES)
    assert not any(h for _, h in m.preconditions)


def test_a_b_symmetry():
    k1, m1 = kappa_closed_form(Params(1.5, 1, 3))
    k2, m2 = kappa_closed_form(Params(1, 1.5, 3))
    assert k1 == k2 and m1.rule == m2.rule


def test_evaluate_rule_not_applicable():
    with pytest.raises(CaseNotApplicable):
        evaluate_rule(Params(0.5, 0.5, 3), "a-one-large-c")


@pytest.mark.parametrize("b", [1, 2, 3])
def test_a_one_family_c_equals_one_plus_b(b):
    k, _ = kappa_closed_form(Params(1, b, 1 + b))
    assert k.value == pytest.approx(ref.kappa_at_minus_one(1, b, 1 + b), abs=1e-10)
    if b == 1:
        assert k.value == pytest.approx(0.5, abs=1e-12)


def test_p_value():
    assert p_value(Params(0.5, 0.5, 1)) == pytest.approx(-0.75)


def _random_params(rng, n):
    out = []
    while len(out) < n:
        a, b = rng.uniform(-1.5, 3, 2)
        c = rng.uniform(-0.5, 4)
        try:
            p = Params(a, b, c)
        except ValueError:
            continue
        if p.admissible:
            out.append(p)
    return out


def test_range_and_overlap_consistency():
    # kappa_closed_form raises if overlapping rules disagree.
    rng = np.random.default_rng(42)
    hits = 0
    for p in _random_params(rng, 3000):
        k, _ = kappa_closed_form(p)
        if k.kind is Kind.FINITE:
            hits += 1
            assert k.value <= 1 + 1e-12
    assert hits > 100


def test_overlap_explicit_vs_limit():
    rng = np.random.default_rng(43)
    checked = 0
    while checked < 200:
        a = rng.uniform(0.05, 0.95)
        b = rng.uniform(1.05, 3)
        hi = min(a + b, 1 + a + b - a * b)
        if hi <= b:
            continue
        p = Params(a, b, rng.uniform(b, hi))
        try:
            v1 = evaluate_rule(p, "explicit-above-balance")
            v2 = evaluate_rule(p, "boundary-plus-one")
        except CaseNotApplicable:
            continue
        checked += 1
        assert v1 == pytest.approx(v2, abs=1e-10)


# ---------------------------------------------------------------- predicates


def test_predicate_examples():
    assert convexity_predicates(Params(0.5, 0.5, 1.75)) == [("convex-small-ab", "convex")]
    assert ("nonconvex-product-below-one", "not convex") in convexity_predicates(Params(0.5, 1.5, 1.9))
    assert ("a-one-convex-small-b", "convex") in convexity_predicates(Params(1, 0.5, 2))
    assert convexity_predicates(Params(1, 1, 2)) == [("a-one-convex-small-b", "convex")]


def test_product_above_one_threshold_is_sign_change():
    # The threshold is where the explicit value changes sign.
    rng = np.random.default_rng(44)
    n = 0
    while n < 100:
        a = rng.uniform(0.3, 0.95)
        b = rng.uniform(1 / a + 0.01, 4)
        c = _threshold_ab_above_1(a, b)
        if not (b <= c < min(a + b, 1 + a + b - a * b)):
            continue
        n += 1
        assert evaluate_rule(Params(a, b, c), "explicit-above-balance") == pytest.approx(0, abs=1e-9)


def test_cubic_threshold_variant_differs():
    assert _threshold_ab_above_1(0.8, 2.0) != _threshold_ab_above_1(0.8, 2.0, cubic_b=True)


@given(st.floats(1.01, 1.99), st.floats(0.0, 0.999))
def test_a_one_mid_b_predicate_agrees_with_kappa(b, t):
    hi = (4 * b - b * b) / (2 * b - 2)
    c = 2 + t * (hi - 2)
    p = Params(1, b, c)
    assert ("a-one-convex-mid-b", "convex") in convexity_predicates(p)
    k, _ = kappa_closed_form(p)
    assert k.value >= -1e-10


def test_sign_coherence():
    rng = np.random.default_rng(45)
    seen = set()
    for p in _random_params(rng, 4000):
        preds = convexity_predicates(p)
        if not preds:
            continue
        k, _ = kappa_closed_form(p)
        for name, verdict in preds:
            seen.add(name)
            if verdict == "convex" and k.kind in (Kind.FINITE, Kind.LOWER_BOUND):
                assert k.value >= -1e-10, (name, p, k)
            if verdict == "not convex":
                assert k.kind is Kind.MINUS_INFINITY or (k.kind is Kind.FINITE and k.value <= 1e-10) or k.kind is Kind.UNCOVERED, (name, p, k)
    assert len(seen) >= 3


def test_predicate_names_unique():
    names = [n for n, _, _ in PREDICATES]
    assert len(names) == len(set(names))


# ---------------------------------------------------------------- c = 2 reference


def test_reference_c2_examples():
    k = reference_kappa_c2(Params(-0.8, 0.4, 2))
    assert (k.note, k.value) == ("c2-c", pytest.approx(0.2, abs=1e-14))
    k = reference_kappa_c2(Params(0.5, 1.8, 2))
    assert (k.note, k.value) == ("c2-e", pytest.approx(1 - 0.4 / 0.3 - 0.65, abs=1e-14))
    k = reference_kappa_c2(Params(0.5, 1.2, 2))
    assert (k.note, k.kind) == ("c2-d", Kind.MINUS_INFINITY)
    with pytest.raises(CaseNotApplicable):
        reference_kappa_c2(Params(0.5, 0.5, 3))


def test_reference_c2_agrees_with_closed_form():
    rng = np.random.default_rng(46)
    compared = 0
    for _ in range(400):
        a, b = rng.uniform(0.01, 2.5, 2)
        p = Params(a, b, 2.0)
        try:
            r = reference_kappa_c2(p)
        except CaseNotApplicable:
            continue
        k, _ = kappa_closed_form(p)
        if r.kind is Kind.FINITE and k.kind is Kind.FINITE:
            compared += 1
            assert k.value == pytest.approx(r.value, abs=1e-7)
    assert compared > 50
