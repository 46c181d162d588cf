import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genstirling.core import build_triangle
from genstirling.errors import BranchError, ConvergenceRegimeError, UnsupportedParameterError
from genstirling.factorials import factorial_function
from genstirling.functions import (
    StirlingFunctionQuery as Q,
    egf_coefficients,
    evaluate_stirling_function,
    stirling_function,
    verify_fn_recurrence,
    zero_order_value,
)
from genstirling.triple import ParameterTriple as T

SECOND = T.of(0, 1, 0)
HOWARD = T.of(1, 1, -1)
MIXED = T.of("1/2", "3/2", "1/3")


def rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


def test_examples():
    assert stirling_function(Q(4, 2, SECOND)) == 7
    for eps in (0.0, 0.3, 2.0):
        assert stirling_function(Q(2, 0, T.of(1, 1, 3), eps)) == 6
    assert rel(stirling_function(Q(0, 1, SECOND, 1.0)), math.e - 1) < 1e-15


def test_integer_eta_sums_k_plus_one_terms():
    result = evaluate_stirling_function(Q(3.5, 4, MIXED, 0.2))
    assert result.method == "finite" and result.terms == 5


def test_frozen_oracle():
    # mpmath Levin sum at 30 digits for (0, 1, 0)
    want = complex(-0.0229803493148339088, -0.0196862250677813509)
    assert rel(stirling_function(Q(1.5, 3.25, SECOND)), want) < 1e-10


def test_recurrence_examples():
    check = verify_fn_recurrence(Q(5, 2, SECOND))
    assert check.lhs == 15 and check.rhs == 15
    assert verify_fn_recurrence(Q(2.5, 4.5, SECOND)).residual <= 1e-8


@pytest.mark.parametrize("eta", [0.5, 1.7 + 0.4j, 3.25])
@pytest.mark.parametrize("eps", [0.2, 1.0])
def test_recurrence_at_gamma_one(eta, eps):
    # S(0, .) is closed form, so the right side is exact apart from rounding
    check = verify_fn_recurrence(Q(1, eta, MIXED, eps))
    assert check.passed, check.residual
    beta = 1.5
    s0 = lambda e: cmath.exp(e * math.log(math.expm1(eps))) / cmath.exp(
        e * math.log(beta) + complex(mpmath.loggamma(e + 1))
    )
    rhs = (1 / 3 + eta * beta) * s0(eta) + s0(eta - 1)
    assert rel(check.rhs, rhs) < 1e-12


@settings(max_examples=25, deadline=None)
@given(
    st.floats(0.3, 3.0), st.floats(-0.5, 0.5), st.floats(0.2, 2.0), st.floats(-0.5, 0.5),
    st.sampled_from([SECOND, HOWARD, MIXED, T.of(2, 3, 1)]),
    st.sampled_from([0.0, 0.4]),
)
def test_recurrence_property(g_re, g_im, gap, e_im, triple, eps):
    gamma = complex(g_re, g_im)
    eta = complex(g_re + gap, e_im)
    if eps == 0.0 and eta.real - 1 <= gamma.real - 1:
        return
    assert verify_fn_recurrence(Q(gamma, eta, triple, eps), threshold=1e-8).passed


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 8), st.sampled_from([SECOND, HOWARD, MIXED, T.of(-1, 1, 0)]), st.sampled_from([0.0]))
def test_integer_reduction(n, triple, eps):
    tri = build_triangle(n, triple)
    for k in range(n + 1):
        want = float(tri[n, k])
        assert rel(stirling_function(Q(n, k, triple, eps)), want) <= 1e-10


@pytest.mark.parametrize("gamma", [0.5, 2.25 + 0.5j, -1.5 + 1j])
def test_eta_zero(gamma):
    want = factorial_function(1 / 3, gamma, -0.5)
    assert rel(stirling_function(Q(gamma, 0, MIXED)), want) <= 1e-10


def test_zero_order_modes():
    eta, eps = 1.5, 0.7
    closed = zero_order_value(eta, SECOND, eps)
    assert rel(closed, math.expm1(eps) ** eta / math.gamma(eta + 1)) < 1e-13
    assert zero_order_value(eta, SECOND, eps, "kronecker") == 0
    assert zero_order_value(0, SECOND, eps, "kronecker") == 1


def test_regime_rejections():
    with pytest.raises(ConvergenceRegimeError):
        stirling_function(Q(3.5, 1.25, SECOND))
    with pytest.raises(ConvergenceRegimeError):
        stirling_function(Q(1.5, 2.5, T.of(1, -1, 0)))
    with pytest.raises(ConvergenceRegimeError):
        stirling_function(Q(1.5, -2, SECOND, 0.5))


def test_egf_examples():
    col = egf_coefficients(2, SECOND, 0.0, 6)
    assert rel(col[4], 7) < 1e-13
    tri = build_triangle(10, HOWARD)
    for k in range(7):
        col = egf_coefficients(k, HOWARD, 0.0, 10)
        assert all(rel(col[n], float(tri[n, k])) <= 1e-10 for n in range(11))
    eta, eps = 2.5 + 0.5j, 0.8
    c0 = egf_coefficients(eta, MIXED, eps, 0)[0]
    want = cmath.exp(eta * math.log(math.expm1(eps) / 1.5)) / complex(mpmath.gamma(eta + 1))
    assert rel(c0, want) < 1e-13


@pytest.mark.parametrize("eta", [1.7, 0.6 + 0.3j, 3])
@pytest.mark.parametrize("triple", [SECOND, MIXED, T.of(2, 3, 1)])
def test_egf_matches_series(eta, triple):
    eps = 0.5
    coeffs = egf_coefficients(eta, triple, eps, 10)
    for n in range(11):
        assert rel(coeffs[n], stirling_function(Q(n, eta, triple, eps))) <= 1e-9


def test_egf_limit_forms():
    first = egf_coefficients(2, T.of(1, 0, 0), 0.0, 6)
    assert [round(c.real) for c in first] == [0, 0, 1, -3, 11, -50, 274]
    pascal = egf_coefficients(2, T.of(0, 0, 1), 0.0, 5)
    assert [round(c.real) for c in pascal] == [0, 0, 1, 3, 6, 10]


def test_egf_branch_errors():
    with pytest.raises(BranchError):
        egf_coefficients(1.5, SECOND, 0.0, 4)
    with pytest.raises(BranchError):
        egf_coefficients(1.5, T.of(1, -1, 0), 1.0, 4)
    with pytest.raises(UnsupportedParameterError):
        egf_coefficients(2, T.of(1, 0, 0), 0.5, 4)
