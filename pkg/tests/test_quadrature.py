import math

import numpy as np
import pytest
from scipy.special import roots_genlaguerre, roots_jacobi

from weakshanks.analysis import check_criterion
from weakshanks.moments import FunctionParams
from weakshanks.quadrature import criterion_integral_sides, make_rule, series_sides

from .conftest import SQRT6


def test_laguerre_one_point():
    rule = make_rule("laguerre", 1)
    assert rule.nodes[0] == pytest.approx(1.0)
    assert rule.weights[0] == pytest.approx(1.0)


@pytest.mark.parametrize("order", [2, 5, 16, 64])
def test_jacobi_mass_is_pi(order):
    rule = make_rule("jacobi", order, (-0.5, -0.5))
    assert rule.weights.sum() == pytest.approx(math.pi, abs=1e-12)
    assert np.all(rule.weights > 0) and rule.nodes.size == rule.weights.size == order
    assert np.all((rule.nodes > 0) & (rule.nodes < 1))


@pytest.mark.parametrize("exps", [(0.5, -0.5), (0.0, 0.0), (1.3, 2.0)])
def test_jacobi_mass_is_beta(exps):
    rule = make_rule("jacobi", 20, exps)
    a, b = exps
    beta = math.gamma(a + 1) * math.gamma(b + 1) / math.gamma(a + b + 2)
    assert rule.weights.sum() == pytest.approx(beta, rel=1e-12)
    assert rule.mass == pytest.approx(beta, rel=1e-14)


def test_laguerre_moment():
    rule = make_rule("laguerre", 40)
    assert rule.integrate(lambda t: t**5) == pytest.approx(120, abs=1e-10)
    assert rule.weights.sum() == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("s", [-0.9, -0.5, 0.0, 1.5, 2.0])
def test_generalized_laguerre_against_scipy(s):
    rule = make_rule("laguerre", 12, (s,))
    x, w = roots_genlaguerre(12, s)
    np.testing.assert_allclose(rule.nodes, x, rtol=1e-12)
    np.testing.assert_allclose(rule.weights, w, rtol=1e-10)
    assert rule.weights.sum() == pytest.approx(math.gamma(s + 1), rel=1e-12)


def test_jacobi_against_scipy():
    # w^a (1-w)^b on [0,1] is scipy's (1-x)^b (1+x)^a on [-1,1] after x = 2w - 1
    a, b = 0.5, -0.5
    rule = make_rule("jacobi", 10, (a, b))
    x, w = roots_jacobi(10, b, a)
    np.testing.assert_allclose(rule.nodes, (1 + x) / 2, atol=1e-13)
    np.testing.assert_allclose(rule.weights, w / 2 ** (a + b + 1), rtol=1e-11)


def test_sides_at_alpha1_r4_quantitative():
    p = FunctionParams(1.0, 4.0)
    lhs, rhs = criterion_integral_sides(p)
    s_lhs, s_rhs = series_sides(p)
    assert lhs == pytest.approx(s_lhs, rel=1e-6)
    assert rhs == pytest.approx(s_rhs, rel=1e-6)
    a, b, c = check_criterion(p).a, check_criterion(p).b, check_criterion(p).c
    assert lhs - rhs == pytest.approx(math.pi * (2 * b - a - c), rel=1e-6)


def test_sign_examples():
    lhs, rhs = criterion_integral_sides(FunctionParams(2.5, SQRT6))
    assert lhs > rhs
    lhs, rhs = criterion_integral_sides(FunctionParams(0.1, 10.0))
    assert lhs < rhs


def test_folded_powers_route_agrees_for_integer_alpha():
    p = FunctionParams(2.0, 3.0)
    folded = criterion_integral_sides(p, fold_powers=True)
    default = criterion_integral_sides(p)
    assert folded == pytest.approx(default, rel=1e-10)


@pytest.mark.parametrize("alpha", [1.0, 1.5, 2.5, 3.0])
@pytest.mark.parametrize("r", [2.45, 3.0, 4.0])
def test_order_convergence(alpha, r):
    p = FunctionParams(alpha, r)
    lo = criterion_integral_sides(p, (32, 32, 32))
    hi = criterion_integral_sides(p, (64, 64, 64))
    assert lo[0] == pytest.approx(hi[0], rel=1e-6)
    assert lo[1] == pytest.approx(hi[1], rel=1e-6)
