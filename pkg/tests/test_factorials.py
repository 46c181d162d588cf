import cmath
import math
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genstirling.core import stirling_explicit
from genstirling.errors import ConvergenceRegimeError, InputError, NonConvergenceError, PoleError
from genstirling.factorials import (
    convergence_regime,
    factorial_function,
    frac_difference_factorial,
    frac_difference_sum,
    gen_factorial,
    gen_factorial_function,
    gen_factorial_poly,
    k_gamma,
    k_gamma_limit_probe,
)
from genstirling.numeric import DensePolynomial
from genstirling.triple import ParameterTriple as T

from conftest import rationals


def close(a, b, rel):
    return abs(a - b) <= rel * max(abs(b), 1e-300)


def test_gen_factorial_examples():
    assert gen_factorial(F(7, 3), 0, 5) == 1
    assert gen_factorial(F(-1), 4, -1) == 24
    assert gen_factorial(F(0), 3, 2) == 0
    assert gen_factorial(F(1, 2), 3, F(1, 2)) == F(1, 2) * 1 * F(3, 2)
    with pytest.raises(InputError):
        gen_factorial(1, -1, 1)


def test_gen_factorial_poly_examples():
    assert gen_factorial_poly(0, 3) == DensePolynomial((1,))
    assert gen_factorial_poly(2, -1) == DensePolynomial((0, -1, 1))
    assert gen_factorial_poly(4, -1).coeffs == (0, -6, 11, -6, 1)


@given(st.integers(0, 7), rationals(), rationals(), rationals())
def test_poly_matches_product(n, delta, shift, z):
    assert gen_factorial_poly(n, delta, shift)(z) == gen_factorial(z - shift, n, delta)


@given(st.integers(0, 7), st.integers(1, 4), rationals())
def test_scaling_law(n, k, z):
    # <z>_{n,+-k} = k^n <z/k>_{n,+-1}
    for sign in (1, -1):
        assert gen_factorial(z, n, sign * k) == k**n * gen_factorial(z / k, n, sign)


def test_k_gamma_examples():
    assert close(k_gamma(5, 1), 24, 1e-13)
    assert close(k_gamma(6, 2), 8, 1e-13)
    assert close(k_gamma(2, 2), 1, 1e-13)
    with pytest.raises(PoleError):
        k_gamma(-4, 2)


def test_k_gamma_against_mpmath():
    for z, k in [(2.5 + 1j, 0.5), (7.1, 3.0), (0.3 - 2j, 1.7)]:
        w = mpmath.mpc(z) / k
        want = complex(mpmath.power(k, w - 1) * mpmath.gamma(w))
        assert close(k_gamma(z, k), want, 1e-12)


def test_limit_probe():
    assert close(k_gamma_limit_probe(1, 1, 10), 1, 1e-12)
    assert close(k_gamma_limit_probe(3, 1, 10**5), 2, 1e-4)
    assert close(k_gamma_limit_probe(6, 2, 10**6), 8, 1e-4)
    with pytest.raises(PoleError):
        k_gamma_limit_probe(-4, 2, 10)


def test_factorial_function_examples():
    assert gen_factorial_function(3, 0, 1) == 1
    assert close(gen_factorial_function(3, 2, 1, falling=True), 6, 1e-13)
    want = float(mpmath.gamma(1.5) / mpmath.gamma(1))
    assert close(gen_factorial_function(1, 0.5, 1), want, 1e-13)


@pytest.mark.parametrize("z,gamma,k", [(2.5, 1.5 + 0.5j, 1.0), (-0.3 + 2j, 2.25, 0.5), (4, -1.5, 2.0)])
def test_factorial_function_against_mpmath(z, gamma, k):
    w = mpmath.mpc(z) / k
    g = mpmath.mpc(gamma)
    rising = complex(mpmath.power(k, g) * mpmath.rf(w, g))
    falling = complex(mpmath.power(k, g) * mpmath.ff(w, g))
    assert close(gen_factorial_function(z, gamma, k), rising, 1e-12)
    assert close(gen_factorial_function(z, gamma, k, falling=True), falling, 1e-12)


@settings(max_examples=50)
@given(
    st.complex_numbers(max_magnitude=6, allow_nan=False, allow_infinity=False),
    st.complex_numbers(max_magnitude=4, allow_nan=False, allow_infinity=False),
    st.sampled_from([0.5, 1.0, 2.5]),
)
def test_order_recurrence(z, gamma, k):
    try:
        rising = [gen_factorial_function(z, gamma - d, k) for d in (0, 1)]
        falling = [gen_factorial_function(z, gamma - d, k, falling=True) for d in (0, 1)]
    except PoleError:
        return
    assert abs(rising[0] - (z + (gamma - 1) * k) * rising[1]) <= 1e-9 * max(1, abs(rising[0]))
    assert abs(falling[0] - (z - (gamma - 1) * k) * falling[1]) <= 1e-9 * max(1, abs(falling[0]))


@given(st.integers(0, 8), rationals(), st.integers(1, 3))
def test_integer_order_matches_product(n, z, k):
    want = float(gen_factorial(z, n, k))
    assert abs(gen_factorial_function(float(z), n, k) - want) <= 1e-10 * max(1, abs(want))


def test_pole_rules():
    # Gamma(2.5) / Gamma(-1): denominator pole -> 0
    assert factorial_function(1.5, 3.5, -1) == 0
    # Gamma(-1) / Gamma(-1.5): numerator pole only
    with pytest.raises(PoleError) as info:
        factorial_function(-2, 0.5, -1)
    assert info.value.which == "numerator"
    # both poles: limit of Gamma(-2) / Gamma(-4) is (-3)(-4)
    assert close(gen_factorial_function(-3, 2, 1, falling=True), 12, 1e-12)


def test_power_case():
    assert close(factorial_function(2.0, 0.5, 0), math.sqrt(2), 1e-15)
    assert factorial_function(0.0, 0.5, 0) == 0
    with pytest.raises(PoleError):
        factorial_function(0.0, -0.5, 0)


def test_regimes():
    assert convergence_regime(2.5, 3, 0.0) == "finite"
    assert convergence_regime(2.5, 1.5, 0.1) == "damped"
    assert convergence_regime(2.5, 3.5, 0.0) == "algebraic"
    with pytest.raises(ConvergenceRegimeError):
        convergence_regime(2.5, 1.5, 0.0)
    with pytest.raises(ConvergenceRegimeError):
        convergence_regime(2.5, -2, 0.3)
    with pytest.raises(ConvergenceRegimeError):
        convergence_regime(1, 2, -0.1)


def test_frac_difference_examples():
    t = T.of(0, 1, 0)
    r = T.of(1, 1, 3)
    assert frac_difference_factorial(2.5, 0, r) == factorial_function(3.0, 2.5, -1)
    assert frac_difference_factorial(4, 2, t) == 14
    howard = T.of(1, 2, -1)
    for n in range(6):
        for k in range(n + 1):
            s = frac_difference_sum(n, k, howard, 0.0)
            assert s.method == "finite" and s.terms == k + 1
            # beta^k k! S(n, k)
            want = float(2**k * math.factorial(k) * stirling_explicit(n, k, howard))
            assert abs(s.value - want) <= 1e-12 * max(1, abs(want))


# mpmath Levin-accelerated sums at 30 digits for S(gamma, eta) times Gamma(eta + 1), (0, 1, 0)
FROZEN = [
    (1.5, 3.25, complex(-0.0229803493148339088, -0.0196862250677813509)),
    (2.5 + 0.3j, 4.5 - 0.2j, complex(-0.00282939735565508609, 0.00287967723869940719)),
]


@pytest.mark.parametrize("gamma,eta,scaled", FROZEN)
def test_algebraic_regime_against_frozen_oracle(gamma, eta, scaled):
    want = scaled * complex(mpmath.gamma(mpmath.mpc(eta) + 1))
    got = frac_difference_factorial(gamma, eta, T.of(0, 1, 0))
    assert close(got, want, 1e-10)


def _mp_damped(gamma, eta, triple, eps):
    a, b, r = (mpmath.mpf(v.numerator) / v.denominator for v in triple)
    g, e = mpmath.mpc(gamma), mpmath.mpc(eta)

    def term(j):
        x = r + (e - j) * b
        fac = mpmath.power(a, g) * mpmath.ff(x / a, g) if a else mpmath.power(x, g)
        return (-1) ** int(j) * mpmath.binomial(e, j) * mpmath.exp((e - j) * eps) * fac

    return complex(mpmath.nsum(term, [0, mpmath.inf]))


@pytest.mark.parametrize(
    "gamma,eta,triple,eps",
    [
        (1.3, 0.4 + 0.2j, T.of(0, 1, 0), 0.5),
        (2.2 - 0.5j, 1.7, T.of("1/2", "3/2", "1/3"), 0.25),
        (0.6, 2.5, T.of(1, 1, 2), 1.0),
    ],
)
def test_damped_regime_against_mpmath(gamma, eta, triple, eps):
    with mpmath.workdps(30):
        want = _mp_damped(gamma, eta, triple, eps)
    s = frac_difference_sum(gamma, eta, triple, eps)
    assert s.method == "direct"
    assert close(s.value, want, 1e-10)


def test_numerator_pole_inside_series():
    # at j = 4 the factorial argument hits a pole of Gamma in the numerator
    with pytest.raises(PoleError):
        frac_difference_sum(0.7, 1.9, T.of("1/2", "1/3", "1/5"), 0.0)


def test_beta_must_be_positive():
    with pytest.raises(ConvergenceRegimeError):
        frac_difference_sum(1.5, 2.5, T.of(1, 0, 1), 0.0)
    with pytest.raises(ConvergenceRegimeError):
        frac_difference_sum(1.5, 2.5, T.of(1, -1, 1), 0.0)


def test_term_cap_reports_nonconvergence():
    with pytest.raises(NonConvergenceError):
        frac_difference_sum(1.5, 1.75, T.of(0, 1, 0), 0.0, max_terms=64)
