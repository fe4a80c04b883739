import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import _reference as ref
import props
from hypconv import engine
from hypconv.errors import (
    CaseNotApplicable,
    ConnectionUnavailable,
    CPole,
    NoConvergence,
    NotConvergentAtOne,
    TermCapExceeded,
)
from hypconv.hyp2f1 import (
    Params,
    contiguous_triple,
    derivative_2f1,
    eval_auto,
    ramanujan_R,
    ratio_asymptotic,
    series_eval,
    value_at_minus_one,
    value_at_one,
)

LN2 = math.log(2.0)


# ---------------------------------------------------------------- Params


def test_params_rejects_pole_and_nonfinite():
    with pytest.raises(CPole):
        Params(1, 1, -2)
    with pytest.raises(ValueError):
        Params(float("nan"), 1, 2)


def test_params_flags():
    p = Params(-2, 1, 1)
    assert not p.admissible
    assert p.violated() == ["a_not_terminating"]
    assert Params(0.5, 2.5, 1.5).violated() == ["c_minus_b_ok"]
    assert Params(0.5, 1.5, 1.5).admissible
    assert Params(0.5, 0.5, 1).admissible
    assert Params(1, 2, 3).swapped() == Params(2, 1, 3)


# ---------------------------------------------------------------- series


def test_series_at_zero():
    assert series_eval(Params(0.3, 1.7, 2.2), 0).value == 1


def test_series_log_identity():
    r = series_eval(Params(1, 1, 2), 0.5)
    assert r.value.real == pytest.approx(2 * LN2, rel=1e-14)
    assert r.method == "series"
    assert abs(r.value - 2 * LN2) <= r.error_bound
    loose = series_eval(Params(1, 1, 2), 0.5, tol=1e-10)
    assert loose.error_bound <= 1e-10 * abs(loose.value)
    assert abs(loose.value - 2 * LN2) <= loose.error_bound


def test_series_terminating_polynomial():
    r = series_eval(Params(-2, 1, 1), 0.3)
    assert r.value.real == pytest.approx(0.49, abs=1e-15)
    assert r.method == "polynomial"
    assert r.error_bound < 1e-14


def test_series_rejects_outside_disk():
    with pytest.raises(NoConvergence):
        series_eval(Params(1, 1, 2), 1.0)


def test_series_term_cap(monkeypatch):
    monkeypatch.setenv("HYPCONV_MAX_TERMS", "20")
    with pytest.raises(TermCapExceeded) as exc:
        series_eval(Params(0.5, 0.5, 1.5), 0.95)
    assert exc.value.partial is not None
    assert exc.value.partial.terms_used == 20


# ---------------------------------------------------------------- eval_auto


def test_eval_auto_example_log():
    z = 0.99
    expected = (2 + 2 * (1 - z) / z * math.log(1 - z)) / z
    r = eval_auto(Params(1, 1, 3), z)
    assert r.value.real == pytest.approx(expected, rel=1e-13)
    assert r.method == "connection-formula" or r.method == "continuation"


def test_eval_auto_example_sqrt():
    expected = 4 / (1 + math.sqrt(0.1)) ** 2
    assert eval_auto(Params(1, 1.5, 3), 0.9).value.real == pytest.approx(expected, rel=1e-13)


def test_eval_auto_routes():
    assert eval_auto(Params(0.3, 0.4, 1.9), 0.2).method == "series"
    assert eval_auto(Params(0.3, 0.4, 1.9), 0.8).method == "connection-formula"
    assert eval_auto(Params(0.25, 0.5, 0.75), 0.8).method == "balanced-log"
    assert eval_auto(Params(-3, 0.4, 1.9), 0.8).method == "polynomial"


def test_eval_auto_integer_gap_flag_and_strict():
    r = eval_auto(Params(1, 1, 3), 0.9)
    assert "connection-unavailable" in r.flags
    with pytest.raises(ConnectionUnavailable):
        eval_auto(Params(1, 1, 3), 0.9, strict=True)


def test_eval_auto_matches_mpmath_across_disk():
    rng = np.random.default_rng(21)
    pts = []
    for _ in range(200):
        a, b = rng.uniform(-1.5, 3, 2)
        c = rng.uniform(0.2, 4)
        r = math.sqrt(rng.uniform(0, 1)) * 0.999
        pts.append((a, b, c, r * cmath.exp(1j * rng.uniform(-math.pi, math.pi))))
    assert props.engine_matches_reference(pts, ref.hyp2f1) < 1e-10


def test_eval_on_unit_circle_matches_mpmath():
    # c - a - b > 0, so the series converges on |z| = 1 and mpmath agrees.
    pts = [(0.5, 0.5, 2.0, cmath.exp(1j * t)) for t in (0.01, 0.5, 2.0, math.pi)]
    pts += [(1.0, 1.5, 3.0, cmath.exp(1j * t)) for t in (0.001, 1.0, 3.0)]
    assert props.engine_matches_reference(pts, ref.hyp2f1) < 1e-12


def test_connection_formula_matches_series_on_overlap():
    rng = np.random.default_rng(22)
    for _ in range(200):
        a, b = rng.uniform(-1, 3, 2)
        c = rng.uniform(0.2, 4)
        m = c - a - b
        if abs(m - round(m)) < 0.05:
            continue
        while True:
            z = complex(*rng.uniform(-1, 1, 2))
            if 0.5 <= abs(1 - z) <= 0.7 and abs(z) <= 0.9:
                break
        s = series_eval(Params(a, b, c), z).value
        f, _ = engine._connection(a, b, c, np.array([1 - z]))
        assert abs(f[0] - s) <= 1e-8 * max(1.0, abs(s))


# ---------------------------------------------------------------- contiguous values


def test_triple_at_zero():
    assert tuple(contiguous_triple(Params(0.3, 0.2, 1.1), 0)) == (1, 1, 1)


def test_triple_a_zero():
    F, G, H = contiguous_triple(Params(0, 1, 2), 0.5)
    assert F == pytest.approx(1.0)
    assert G.real == pytest.approx(2 * LN2, rel=1e-14)
    assert H.real == pytest.approx(series_eval(Params(1, 2, 3), 0.5).value.real, rel=1e-14)


def test_triple_at_minus_one():
    F, G, H = contiguous_triple(Params(1, 1, 2), -1)
    assert F.real == pytest.approx(LN2, rel=1e-13)
    assert G.real == pytest.approx(0.5, rel=1e-13)
    assert H.real == pytest.approx(2 * (LN2 - 0.5), rel=1e-12)


def test_derivative_examples():
    assert derivative_2f1(Params(0.3, 0.7, 1.9), 0) == pytest.approx(0.3 * 0.7 / 1.9)
    assert derivative_2f1(Params(1, 1, 2), 0.5).real == pytest.approx(4 - 4 * LN2, rel=1e-13)
    assert derivative_2f1(Params(-2, 1, 1), 0.3).real == pytest.approx(-1.4, rel=1e-14)


@given(st.floats(-0.9, 2.5), st.floats(-0.9, 2.5), st.floats(0.3, 3.0), st.floats(0.05, 0.9), st.floats(-3.1, 3.1))
def test_derivative_both_forms(a, b, c, r, t):
    p = Params(a, b, c)
    z = r * cmath.exp(1j * t)
    F, G, _ = contiguous_triple(p, z)
    dF = derivative_2f1(p, z)
    assert abs(z * dF - a * (G - F)) <= 1e-10 * (1 + abs(z * dF) + abs(a) * (abs(G) + abs(F)))


def test_ode_residual():
    ok, detail = props.ode_residual()
    assert ok, detail


def test_contiguous_identity():
    ok, detail = props.contiguous_identity()
    assert ok, detail


# ---------------------------------------------------------------- values at +-1


def test_value_at_one_examples():
    assert value_at_one(Params(0.5, 0.5, 2)) == pytest.approx(4 / math.pi, rel=1e-13)
    assert value_at_one(Params(0, 3.7, 5)) == 1.0
    assert value_at_one(Params(1, 1, 3)) == pytest.approx(2.0, rel=1e-13)


def test_value_at_one_diverges():
    with pytest.raises(NotConvergentAtOne):
        value_at_one(Params(1, 1, 2))


def test_value_at_minus_one():
    assert value_at_minus_one(Params(1, 1, 2)).value.real == pytest.approx(LN2, rel=1e-14)
    assert value_at_minus_one(Params(0.4, 1.3, 2.2)).value.real == pytest.approx(
        ref.hyp2f1(0.4, 1.3, 2.2, -1).real, rel=1e-13
    )


def test_ramanujan_constant():
    assert ramanujan_R(1, 1) == 0
    assert ramanujan_R(0.5, 0.5) == pytest.approx(4 * LN2, rel=1e-12)
    assert ramanujan_R(1, 2) == pytest.approx(-1.0, abs=1e-12)


# ---------------------------------------------------------------- asymptotics


def test_ratio_asymptotic_below():
    e = ratio_asymptotic(Params(0.5, 0.5, 1.5))
    assert (e.case, e.alpha, e.epsilon) == ("below", 0.5, 1.0)
    assert e.A == pytest.approx(2 / math.pi, rel=1e-13)


def test_ratio_asymptotic_balanced_and_above():
    e = ratio_asymptotic(Params(1, 1, 2))
    assert e.case == "balanced"
    z = 0.9
    assert e.leading(z) == pytest.approx(1 / (-(1 - z) * math.log(1 - z)))
    e = ratio_asymptotic(Params(1, 1.5, 2))
    assert e.case == "above"
    assert e.leading(z) == pytest.approx(0.5 / (1 - z))


def test_ratio_asymptotic_not_applicable():
    with pytest.raises(CaseNotApplicable):
        ratio_asymptotic(Params(0.5, 0.5, 2.5))


@pytest.mark.parametrize("abc", [(0.5, 0.5, 1.5), (0.3, 0.7, 1.6), (1.2, 0.4, 2.1)])
def test_remainder_order_below(abc):
    p = Params(*abc)
    e = ratio_asymptotic(p)
    scaled = []
    for x in (0.9, 0.99, 0.999, 0.9999):
        gf = eval_auto(Params(p.a + 1, p.b, p.c), x).value / eval_auto(p, x).value
        scaled.append(abs(gf - e.leading(x)) * (1 - x) ** (1 - e.epsilon))
    assert max(scaled) < 10 * (1 + scaled[0])
    assert scaled[-1] <= 2 * scaled[0] + 1e-6


@pytest.mark.parametrize("ab", [(0.5, 0.5), (1.0, 1.0), (0.3, 1.4)])
def test_balanced_leading_ratio(ab):
    a, b = ab
    p = Params(a, b, a + b)
    vals = []
    # The correction is of relative order 1/log(1/(1-x)), so the approach is slow.
    for x in (0.9, 0.99, 0.999, 0.9999, 1 - 1e-8, 1 - 1e-14):
        gf = (eval_auto(Params(a + 1, b, a + b), x).value / eval_auto(p, x).value).real
        vals.append(gf * (-a * (1 - x) * math.log(1 - x)))
    gaps = [abs(v - 1) for v in vals]
    assert all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:]))
    assert gaps[-1] < 0.4 * gaps[0]
    assert gaps[-1] * -math.log(1e-14) < 4.0
