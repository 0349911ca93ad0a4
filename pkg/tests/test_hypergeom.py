import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakshanks.errors import DivergentArgument, InvalidParameters, NonConvergence
from weakshanks.hypergeom import (
    HypergeomSpec,
    chu_vandermonde_lhs,
    chu_vandermonde_rhs,
    f01_recurrence_residual,
    hyp,
    hyp0f1_array,
    pfq,
    pfq_terms,
    pochhammer,
)


def test_pochhammer_examples():
    assert pochhammer(3.7, 0) == 1
    assert pochhammer(1, 5) == 120
    assert pochhammer(2.5, 3) == pytest.approx(39.375, abs=0)


def test_pochhammer_negative_integer_terminates():
    assert pochhammer(-3, 3) == -6.0
    assert pochhammer(-3, 4) == 0.0
    assert pochhammer(-3, 10) == 0.0


def test_pochhammer_overflow_is_infinite():
    assert pochhammer(1, 400) == math.inf
    assert pochhammer(1.5, 400) == math.inf


@given(st.floats(-20, 20), st.integers(0, 30))
def test_pochhammer_matches_mpmath(a, n):
    expected = float(mpmath.rf(mpmath.mpf(a), n))
    assert pochhammer(a, n) == pytest.approx(expected, rel=1e-12, abs=1e-300)


def test_pfq_zero_argument():
    res = pfq(HypergeomSpec((1.3, 2.2, 0.5), (1.5, 4), 0.0))
    assert res.value == 1.0
    assert res.terms_used == 1
    assert res.converged


def test_pfq_zero_upper_parameter():
    for z in (0.3, -0.7, 0.95):
        res = pfq(HypergeomSpec((0, 2.7, 0.5), (1, 1), z))
        assert res.value == 1.0


def test_2f1_log_oracle():
    z = 0.5
    res = pfq(HypergeomSpec((1, 1), (2,), z))
    assert res.value == pytest.approx(-math.log(1 - z) / z, rel=1e-13)
    assert res.converged
    assert res.last_term_magnitude <= 1e-14 * max(1, res.value)


@pytest.mark.parametrize(
    "upper, lower, z",
    [
        ((2.5, 2.5, 0.5), (1, 1), 2 / 3),
        ((2.0, 3.0, 1.5), (2, 2), 4 / 4.41),
        ((0.3, 1.7, 2.0, 1.5), (4, 2, 3), 0.8),
        ((), (1,), 50.0),
        ((), (2,), -30.0),
        ((1.5,), (2, 3), 12.0),
        ((-4, 2.5), (1.5,), 3.0),  # terminating: any z allowed
    ],
)
def test_pfq_matches_mpmath(upper, lower, z):
    expected = float(mpmath.hyper(upper, lower, z))
    assert hyp(upper, lower, z) == pytest.approx(expected, rel=2e-13)


def test_pfq_errors():
    with pytest.raises(InvalidParameters):
        HypergeomSpec((1,), (-2,), 0.1)
    with pytest.raises(InvalidParameters):
        HypergeomSpec((1,), (0,), 0.1)
    with pytest.raises(DivergentArgument):
        pfq(HypergeomSpec((1, 1), (2,), 1.0))
    with pytest.raises(DivergentArgument):
        pfq(HypergeomSpec((1, 1), (2,), 0.9995))
    with pytest.raises(DivergentArgument):
        pfq(HypergeomSpec((1, 1, 1), (2,), 0.1))
    with pytest.raises(NonConvergence):
        pfq(HypergeomSpec((1, 1), (2,), 0.99), max_terms=50)
    with pytest.raises(InvalidParameters):
        pfq(HypergeomSpec((1,), (2,), 0.1), tol=0)


def test_terms_used_bounded_by_max_terms():
    res = pfq(HypergeomSpec((1, 1), (2,), 0.9), max_terms=10_000)
    assert res.terms_used <= 10_000


@settings(max_examples=50)
@given(
    st.lists(st.floats(0.05, 5), min_size=1, max_size=4),
    st.lists(st.floats(0.05, 5), min_size=0, max_size=3),
    st.floats(0.01, 0.95),
)
def test_partial_sums_increase_for_positive_parameters(upper, lower, z):
    upper = upper[: len(lower) + 1]
    spec = HypergeomSpec(upper, lower, z)
    partial, prev = 0.0, 0.0
    for n, term in zip(range(200), pfq_terms(spec)):
        partial += term
        assert partial >= prev
        prev = partial
    assert pfq(spec).value >= 1.0


@settings(max_examples=40)
@given(st.floats(0.05, 6), st.floats(2.05, 10), st.floats(0.1, 4))
def test_parameter_cancellation(alpha, r, x):
    z = 4 / r**2
    tol = 1e-14
    full = hyp((alpha, alpha + 1, 1.5, x), (2, 2, x), z, tol)
    reduced = hyp((alpha, alpha + 1, 1.5), (2, 2), z, tol)
    assert abs(full - reduced) <= 2 * tol * max(1, abs(full))


def test_chu_vandermonde_examples():
    assert chu_vandermonde_lhs(0, 5, 7) == chu_vandermonde_rhs(0, 5, 7) == 1
    assert chu_vandermonde_lhs(1, 0, 0) == 2
    assert chu_vandermonde_rhs(1, 0, 0) == 2


def test_chu_vandermonde_direct_summation():
    # i=3, k1=2, k2=1 summed with exact rationals
    from fractions import Fraction

    def rf(a, n):
        out = Fraction(1)
        for m in range(n):
            out *= a + m
        return out

    lhs = sum(rf(-3, j) * rf(-5, j) / (rf(1, j) * rf(2, j)) for j in range(4))
    rhs = rf(7, 3) / rf(2, 3)
    assert lhs == rhs
    assert chu_vandermonde_lhs(3, 2, 1) == pytest.approx(float(lhs), rel=1e-15)
    assert chu_vandermonde_rhs(3, 2, 1) == pytest.approx(float(rhs), rel=1e-15)


def test_chu_vandermonde_grid():
    for i in range(13):
        for k1 in range(13):
            for k2 in range(13):
                lhs = chu_vandermonde_lhs(i, k1, k2)
                rhs = chu_vandermonde_rhs(i, k1, k2)
                assert lhs == pytest.approx(rhs, rel=1e-12)


def test_f01_recurrence():
    assert f01_recurrence_residual(0.0) == 0.0
    tol = 1e-14
    for z in (0.01, 0.1, 0.3, 0.5, 2 / 3, 0.9):
        assert abs(f01_recurrence_residual(z, tol)) <= 10 * tol


def test_hyp0f1_array_matches_scalar():
    z = np.array([0.0, 0.5, 3.0, 40.0, 800.0, -5.0])
    for b in (1.0, 2.0, 2.5):
        vec = hyp0f1_array(b, z)
        for zi, vi in zip(z, vec):
            assert vi == pytest.approx(hyp((), (b,), zi), rel=1e-13)
