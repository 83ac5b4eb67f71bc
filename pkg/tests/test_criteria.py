import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from couette_slip.criteria import (I_i, I_ii, II_iii, II_iv, NormForm, ProvenStable, SquaredForm, TWO_SQRT2, Unknown,
                                   bound_min_f, case2_thresholds, check, check_case1, check_case2, delta0, f_branch,
                                   f_breakpoint, poincare_constant, slip_h)
from couette_slip.errors import InvalidInput, NonpositiveH
from couette_slip.params import FlowConfig


def test_delta0():
    d = delta0()
    assert abs(2 * d**3 + d - 1) < 1e-12
    assert d == pytest.approx(0.589755, abs=1e-6)
    cubic = lambda x: 2 * x**3 + x - 1
    assert cubic(0.5) < 0 < cubic(0.7)


def test_bound_min_f():
    assert bound_min_f(1.0) == pytest.approx(2.828427, abs=1e-6)
    assert bound_min_f(0.7) == pytest.approx(2.366432, abs=1e-6)
    with pytest.raises(NonpositiveH):
        bound_min_f(0.0)


def test_f_grid_minimum_exceeds_bound():
    ks = np.logspace(-3, np.log10(50), 2000)
    deltas = np.linspace(delta0(), 1.0, 21)[1:]
    for h in (0.25, 0.5, 0.7, 1.0):
        fmax = np.max([f_branch(ks, h, d) for d in deltas], axis=0)
        assert fmax.min() > bound_min_f(h) - 1e-6


@settings(max_examples=50, deadline=None)
@given(delta=st.floats(0.6, 0.999), h=st.floats(0.05, 1.0))
def test_breakpoint_branches_agree(delta, h):
    k = f_breakpoint(delta)
    first = h + TWO_SQRT2 * k**3 * math.sqrt(1 - delta)
    second = h + 2 * k**2 * delta
    assert first == pytest.approx(second, rel=1e-12)


def test_poincare():
    assert poincare_constant(NormForm).value == pytest.approx(0.3183099, abs=1e-7)
    assert poincare_constant(SquaredForm).value == pytest.approx(0.1013212, abs=1e-7)
    with pytest.raises(InvalidInput):
        poincare_constant("bogus")
    # ||cos(pi y)|| / ||(cos(pi y))'|| = 1/pi on (0, 1)
    y = np.linspace(0, 1, 20001)
    f, df = np.cos(np.pi * y), -np.pi * np.sin(np.pi * y)
    ratio = math.sqrt(np.trapezoid(f**2, y) / np.trapezoid(df**2, y))
    assert ratio == pytest.approx(1 / math.pi, rel=1e-6)


def test_case1_examples():
    r = check_case1(FlowConfig.case1(0.1, 1, 5, -3))
    assert r.proven and r.criterion_id == I_i and r.margin == math.inf
    r = check_case1(FlowConfig.case1(1, -0.1, 1, 0))
    assert r.criterion_id == I_ii and r.label() == "ProvenStable(I_ii)"
    assert r.details["lhs"] == pytest.approx(0.1 / 0.9 / math.sqrt(0.7), rel=1e-12)
    assert r.margin == pytest.approx(TWO_SQRT2 - 0.13280, abs=1e-4)
    r = check_case1(FlowConfig.case1(1, -0.5, 1, 0))
    assert r.verdict == Unknown and r.criterion_id is None


def test_case1_large_shear_unknown():
    # mu above threshold but R too large
    r = check_case1(FlowConfig.case1(1, -0.2, 40, 0))
    assert r.verdict == Unknown and r.margin < 0


def test_case2_examples():
    r = check_case2(FlowConfig.case2(1.7, 0, 0, 0, 0))
    assert r.criterion_id == II_iii
    cfg = FlowConfig.case2(1, -0.05, 0.1, 1, 0)
    t1, t2 = case2_thresholds(cfg, NormForm)
    assert t1 == pytest.approx(0.115915, abs=1e-5) and t2 == pytest.approx(0.15)
    r = check_case2(cfg)
    assert r.criterion_id == II_iv
    assert r.details["lhs"] == pytest.approx(0.12052, abs=1e-5)
    r = check_case2(FlowConfig.case2(1, -2, 0, 1, 0))
    assert r.verdict == Unknown


def test_wrong_case():
    with pytest.raises(InvalidInput):
        check_case1(FlowConfig.case2(1, 1, 1))
    with pytest.raises(InvalidInput):
        check_case2(FlowConfig.case1(1, 1))


def test_slip_h():
    assert slip_h(FlowConfig.case1(1, -0.1)) == pytest.approx(0.7)
    assert slip_h(FlowConfig.case1(1, 0.2)) == pytest.approx(0.8)
    assert slip_h(FlowConfig.case2(1, -0.05, 0.1)) == pytest.approx(0.85)


@settings(max_examples=60, deadline=None)
@given(alpha=st.floats(-1.0, -0.01), amb=st.floats(0, 20), mus=st.lists(st.floats(0.01, 10), min_size=2, max_size=6))
def test_case1_monotone_in_viscosity(alpha, amb, mus):
    mus = sorted(m for m in mus if abs(m + alpha) > 1e-9)
    proven = [check(FlowConfig.case1(m, alpha, amb, 0)).proven for m in mus]
    # once proven, larger viscosity stays proven
    if True in proven:
        first = proven.index(True)
        assert all(proven[first:])


@settings(max_examples=60, deadline=None)
@given(a0=st.floats(-2, 2), a1=st.floats(-2, 2), mu=st.floats(0.05, 5), amb=st.floats(-5, 5))
def test_squared_form_never_weaker(a0, a1, mu, amb):
    # with a negative coefficient max|a_l| >= a0 + a1, so a smaller C_P lowers the threshold
    if min(a0, a1) >= 0:
        return
    try:
        n = check(FlowConfig.case2(mu, a0, a1, amb, 0), NormForm)
        s = check(FlowConfig.case2(mu, a0, a1, amb, 0), SquaredForm)
    except InvalidInput:
        return
    t_n = case2_thresholds(FlowConfig.case2(mu, a0, a1), NormForm)
    t_s = case2_thresholds(FlowConfig.case2(mu, a0, a1), SquaredForm)
    assert max(t_s) <= max(t_n) + 1e-12
    if n.proven:
        assert s.proven
