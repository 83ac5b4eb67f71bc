import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import Polynomial

from couette_slip.cheb import make_grid
from couette_slip.errors import InvalidInput, SingularDenominator, SingularMatrix
from couette_slip.green import (GreenParams, green_eval, random_smooth, resolvent_estimate_scan,
                                resolvent_solve_direct, resolvent_solve_green)
from couette_slip.params import FlowConfig


def manufactured(r, zeta, y):
    """g = (1-y)(1+ry) e^y meets r g(0) - g'(0) = 0 and g(1) = 0."""
    P = Polynomial([1.0, -1.0]) * Polynomial([1.0, r])
    g = P(y) * np.exp(y)
    g2 = (P.deriv(2)(y) + 2 * P.deriv()(y) + P(y)) * np.exp(y)
    return g, zeta**2 * g - g2


def test_closed_form_value():
    assert green_eval(GreenParams(1.0, 0.0), 0.5, 0.5) == pytest.approx(np.cosh(0.5) * np.sinh(0.5) / np.cosh(1))


def test_dirichlet_at_top_and_symmetry():
    p = GreenParams(2.5, 0.7)
    s = np.linspace(0, 1, 11)
    assert np.max(np.abs(green_eval(p, 1.0, s))) < 1e-15
    G = green_eval(p, s[:, None], s[None, :])
    assert np.max(np.abs(G - G.T)) < 1e-14


def test_robin_condition_at_bottom():
    p = GreenParams(1.7, 0.4)
    h = 1e-6
    for s in (0.3, 0.8):
        g0 = green_eval(p, 0.0, s)
        dg = (green_eval(p, h, s) - green_eval(p, 0.0, s)) / h
        assert 0.4 * g0 - dg == pytest.approx(0, abs=1e-5)


def test_branch_rejected():
    with pytest.raises(InvalidInput):
        GreenParams(-1.0, 0.0)
    with pytest.raises(InvalidInput):
        GreenParams(2j, 0.0)


def test_singular_denominator():
    # (r + z) - (r - z) e^{-2z} = 0 at z = 1 for r = -coth(1)... solve r: r(1 - e^-2) = -(1 + e^-2)
    r = -(1 + np.exp(-2)) / (1 - np.exp(-2))
    with pytest.raises(SingularDenominator):
        green_eval(GreenParams(1.0, r), 0.3, 0.4)
    g = make_grid(32)
    with pytest.raises(SingularMatrix):
        resolvent_solve_direct(GreenParams(1.0, r), g, np.ones(32))


@settings(max_examples=30, deadline=None)
@given(re=st.floats(0.01, 200), im=st.floats(-200, 200), r=st.floats(-0.9, 50),
       y=st.floats(0, 1), s=st.floats(0, 1))
def test_stable_evaluation(re, im, r, y, s):
    with np.errstate(over="raise", invalid="raise", divide="raise"):
        try:
            v = green_eval(GreenParams(complex(re, im), r), y, s)
        except SingularDenominator:
            return
    assert np.isfinite(v)


@pytest.mark.parametrize("zeta", [1.0, 3 + 4j, 10.0])
@pytest.mark.parametrize("r", [0.0, 1.0, -0.2])
def test_manufactured_solution(zeta, r):
    g = make_grid(64)
    exact, f = manufactured(r, zeta, g.y)
    p = GreenParams(zeta, r)
    for solver in (resolvent_solve_green, resolvent_solve_direct):
        u = solver(p, g, f)
        assert np.max(np.abs(u - exact)) < 1e-7 * np.max(np.abs(exact))


def test_cos_manufactured_direct():
    g = make_grid(64)
    y = g.y
    exact = np.cos(np.pi * y / 2) * (1 - y)
    d2 = (-(np.pi / 2) ** 2 * np.cos(np.pi * y / 2) * (1 - y) + np.pi * np.sin(np.pi * y / 2))
    zeta = 2.0
    u = resolvent_solve_direct(GreenParams(zeta, -1.0), g, zeta**2 * exact - d2)
    assert np.max(np.abs(u - exact)) < 1e-7


def test_zero_input():
    g = make_grid(32)
    p = GreenParams(1.0, 0.0)
    assert np.all(resolvent_solve_green(p, g, np.zeros(32)) == 0)
    assert np.all(resolvent_solve_direct(p, g, np.zeros(32)) == 0)


def test_solvers_agree(rng):
    g = make_grid(64)
    for zeta in (1.0, 3 + 4j, 10.0):
        for r in (0.0, 1.0, -0.2):
            p = GreenParams(zeta, r)
            for _ in range(3):
                f = random_smooth(g, rng)
                d = resolvent_solve_green(p, g, f) - resolvent_solve_direct(p, g, f)
                assert np.max(np.abs(d)) < 1e-8


def test_resolvent_scan():
    g = make_grid(64)
    cfg = FlowConfig.case1(1, 0)
    rep = resolvent_estimate_scan(cfg, 1, [1, 10, 100], g)
    assert rep.spread <= 3.0
    zero = resolvent_estimate_scan(cfg, 0, [0.0], g)
    assert np.isfinite(zero.max_ratio) and zero.max_ratio > 0
    none = resolvent_estimate_scan(cfg, 1, [5.0], g, rhs=[np.zeros(64)])
    assert none.max_ratio == 0.0


def test_resolvent_scan_seeded():
    g = make_grid(32)
    cfg = FlowConfig.case1(1, 0.5)
    a = resolvent_estimate_scan(cfg, 2, [1j, 4.0], g, seed=3)
    b = resolvent_estimate_scan(cfg, 2, [1j, 4.0], g, seed=3)
    assert a.ratios == b.ratios
    with pytest.raises(InvalidInput):
        resolvent_estimate_scan(FlowConfig.case2(1, 1, 1), 1, [1.0], g)
