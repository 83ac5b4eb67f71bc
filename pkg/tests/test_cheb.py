import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from couette_slip.cheb import integrate, interpolate, make_grid
from couette_slip.errors import OutOfDomain, SizeMismatch, TooFewNodes


def test_endpoints_ascending():
    g = make_grid(8)
    assert g.y[0] == 0.0 and g.y[-1] == 1.0
    assert np.all(np.diff(g.y) > 0)


def test_too_few_nodes():
    with pytest.raises(TooFewNodes):
        make_grid(7)


def test_derivative_of_cubic():
    g = make_grid(32)
    assert np.max(np.abs(g.D1 @ g.y**3 - 3 * g.y**2)) < 1e-11


@pytest.mark.parametrize("m", [0, 1, 5, 12, 30])
def test_monomials_exact(m):
    g = make_grid(32)
    exact = m * g.y ** max(m - 1, 0)
    err = np.max(np.abs(g.D1 @ g.y**m - exact))
    assert err <= 1e-12 * max(1.0, np.max(np.abs(exact)))


def test_higher_derivatives_consistent():
    g = make_grid(40)
    for m in range(2, 38):
        f = g.y**m
        ref = g.D1 @ (g.D1 @ f)
        assert np.max(np.abs(g.D2 @ f - ref)) <= 1e-10 * max(1.0, np.max(np.abs(ref)))


def test_row_sums_vanish():
    g = make_grid(64)
    for D in (g.D1, g.D2, g.D3, g.D4):
        assert np.max(np.abs(D.sum(axis=1))) <= 1e-12 * max(1.0, np.abs(D).max())


def test_weights():
    g = make_grid(32)
    assert abs(g.w.sum() - 1.0) < 1e-13
    assert integrate(g, np.zeros(32)) == 0


def test_integrals():
    g = make_grid(32)
    assert integrate(g, g.y**4 * (1 - g.y) ** 4) == pytest.approx(1 / 630, abs=1e-12)
    assert integrate(g, np.sin(np.pi * g.y)) == pytest.approx(2 / np.pi, abs=1e-12)


def test_fundamental_theorem():
    g = make_grid(48)
    f = np.exp(np.sin(3 * g.y))
    assert abs(integrate(g, g.D1 @ f) - (f[-1] - f[0])) < 1e-10


def test_size_mismatch():
    g = make_grid(16)
    with pytest.raises(SizeMismatch):
        integrate(g, np.ones(15))


def test_interpolation():
    g = make_grid(32)
    assert interpolate(g, g.y**2, 0.5) == pytest.approx(0.25, abs=1e-13)
    assert interpolate(g, np.exp(g.y), 0.3) == pytest.approx(math.exp(0.3), abs=1e-10)
    f = np.cos(5 * g.y)
    for j in (0, 7, 31):
        assert interpolate(g, f, g.y[j]) == f[j]
    with pytest.raises(OutOfDomain):
        interpolate(g, f, 1.5)


def test_grid_is_read_only():
    g = make_grid(16)
    with pytest.raises(ValueError):
        g.D1[0, 0] = 1.0


@settings(max_examples=40, deadline=None)
@given(coef=st.lists(st.floats(-3, 3), min_size=1, max_size=20), x=st.floats(0, 1))
def test_polynomials_reproduced(coef, x):
    g = make_grid(24)
    p = np.polynomial.Polynomial(coef)
    assert interpolate(g, p(g.y), x) == pytest.approx(p(x), abs=1e-10 * (1 + np.abs(coef).sum()))
    dp = p.deriv()
    assert np.max(np.abs(g.D1 @ p(g.y) - dp(g.y))) <= 1e-9 * (1 + np.abs(coef).sum())
