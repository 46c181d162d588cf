"""Generalized Stirling functions ``S(gamma, eta; eps)`` of complex order.

    S(gamma, eta; eps) = 1 / (beta^eta Gamma(eta + 1))
                         * sum_j (-1)^j binom(eta, j) e^((eta - j) eps) <r + (eta - j) beta>_{gamma,-alpha}

For ``gamma = n`` and ``eta = k`` nonnegative integers this is the ordinary
generalized Stirling number.  The exponential generating function in ``n``
is ``d(z) * h_eps(z)^eta / Gamma(eta + 1)`` with
``h_eps(z) = (e^eps (1 + alpha z)^(beta/alpha) - 1) / beta``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import BranchError, InputError, UnsupportedParameterError
from .factorials import _integer_order, convergence_regime, factorial_function, frac_difference_sum
from .numeric import (
    TruncatedSeries,
    log_gamma,
    series_binomial_power,
    series_complex_power,
    series_exp_scaled,
    series_log1p_scaled,
    series_mul,
    series_pow,
)
from .triple import ParameterTriple

ZERO_ORDER_MODES = ("closed-form", "kronecker")


@dataclass(frozen=True)
class StirlingFunctionQuery:
    gamma: complex
    eta: complex
    triple: ParameterTriple
    epsilon: float = 0.0
    tol: float = 1e-12
    zero_order: str = "closed-form"

    @property
    def regime(self) -> str:
        return convergence_regime(self.gamma, self.eta, self.epsilon)

    def shifted(self, d_gamma: int = 0, d_eta: int = 0) -> "StirlingFunctionQuery":
        return StirlingFunctionQuery(
            _shift(self.gamma, d_gamma),
            _shift(self.eta, d_eta),
            self.triple,
            self.epsilon,
            self.tol,
            self.zero_order,
        )


def _shift(x, d):
    if isinstance(x, int) and not isinstance(x, bool):
        return x + d
    return complex(x) + d


@dataclass(frozen=True)
class StirlingFunctionValue:
    value: complex
    terms: int
    method: str
    error_estimate: float = 0.0


def _is_zero(x) -> bool:
    return complex(x) == 0


def _scale(eta, beta: float) -> complex:
    """``beta^eta Gamma(eta + 1)``; exact factorial for integer ``eta``."""
    k = _integer_order(eta)
    if k is not None:
        return complex(beta**k * math.factorial(k))
    e = complex(eta)
    return cmath.exp(e * math.log(beta) + log_gamma(e + 1))


def evaluate_stirling_function(q: StirlingFunctionQuery) -> StirlingFunctionValue:
    """:func:`stirling_function` plus the term count and summation method."""
    if q.zero_order not in ZERO_ORDER_MODES:
        raise InputError(f"zero_order must be one of {ZERO_ORDER_MODES}")
    beta = float(q.triple.beta)
    if _is_zero(q.gamma):
        convergence_regime(q.gamma, q.eta, q.epsilon)
        if q.triple.beta <= 0:
            raise UnsupportedParameterError("Stirling functions need beta > 0")
        if q.zero_order == "kronecker":
            return StirlingFunctionValue(complex(_is_zero(q.eta)), 0, "closed-form")
        base = math.expm1(q.epsilon)
        if base == 0:
            value = 1.0 + 0j if _is_zero(q.eta) else 0j
        else:
            value = cmath.exp(complex(q.eta) * math.log(base)) / _scale(q.eta, beta)
        return StirlingFunctionValue(complex(value), 0, "closed-form")
    summed = frac_difference_sum(q.gamma, q.eta, q.triple, q.epsilon, q.tol)
    scale = _scale(q.eta, beta)
    return StirlingFunctionValue(summed.value / scale, summed.terms, summed.method, summed.error_estimate / abs(scale))


def stirling_function(q: StirlingFunctionQuery) -> complex:
    return evaluate_stirling_function(q).value


@dataclass(frozen=True)
class RecurrenceCheck:
    lhs: complex
    rhs: complex
    residual: float
    passed: bool


def verify_fn_recurrence(q: StirlingFunctionQuery, threshold: float | None = None) -> RecurrenceCheck:
    """``S(g, e) = (r + e beta - (g - 1) alpha) S(g - 1, e) + S(g - 1, e - 1)``.

    ``residual = |lhs - rhs| / max(1, |lhs|)``; passes at ``10 * tol`` unless a
    ``threshold`` is given.
    """
    alpha, beta, r = (float(v) for v in q.triple)
    lhs = stirling_function(q)
    same_eta = stirling_function(q.shifted(d_gamma=-1))
    lower_eta = stirling_function(q.shifted(d_gamma=-1, d_eta=-1))
    coef = r + complex(q.eta) * beta - (complex(q.gamma) - 1) * alpha
    rhs = coef * same_eta + lower_eta
    residual = abs(lhs - rhs) / max(1.0, abs(lhs))
    limit = 10 * q.tol if threshold is None else threshold
    return RecurrenceCheck(lhs, rhs, residual, residual <= limit)


def egf_coefficients(eta, triple: ParameterTriple, epsilon: float = 0.0, n_max: int = 10) -> list[complex]:
    """``n! [z^n]`` of ``d(z) h_eps(z)^eta / Gamma(eta + 1)`` for ``n = 0..n_max``.

    These are ``S(n, eta; eps)``.  ``alpha = 0`` uses ``e^(r z)`` and
    ``e^(beta z)``; ``beta = 0`` (only with ``eps = 0``) uses
    ``log(1 + alpha z) / alpha``.
    """
    if n_max < 0:
        raise InputError("n_max must be nonnegative")
    if epsilon < 0:
        raise InputError("epsilon must be nonnegative")
    order = n_max + 1
    alpha, beta, r = triple
    if alpha == 0:
        d = series_exp_scaled(r, order)
        inner = series_exp_scaled(beta, order)
    else:
        d = series_binomial_power(alpha, r / alpha, order)
        inner = series_binomial_power(alpha, beta / alpha, order) if beta != 0 else None
    if beta == 0:
        if epsilon != 0:
            raise UnsupportedParameterError("beta = 0 has no generating function for eps > 0")
        base = series_log1p_scaled(alpha, order) if alpha != 0 else TruncatedSeries.of([0, 1], order)
        base = base.to_complex()
    else:
        base = (inner.to_complex() * math.exp(epsilon) - 1) / float(beta)
    d = d.to_complex()
    k = _integer_order(eta)
    if k is not None:
        power = series_pow(base, k)
        norm = math.factorial(k)
    else:
        b0 = base[0]
        if b0 == 0:
            raise BranchError("h_eps(0) = 0: a non-integer power has no power-series expansion")
        if b0.imag == 0 and b0.real < 0:
            raise BranchError("h_eps(0) lies on the negative real axis (branch cut)")
        power = series_complex_power(base, complex(eta))
        norm = cmath.exp(log_gamma(complex(eta) + 1))
    series = series_mul(d, power)
    return [complex(series[n]) * math.factorial(n) / norm for n in range(order)]


def zero_order_value(eta, triple: ParameterTriple, epsilon: float, mode: str = "closed-form") -> complex:
    """``S(0, eta; eps)`` under either convention (see :data:`ZERO_ORDER_MODES`)."""
    return stirling_function(StirlingFunctionQuery(0, eta, triple, epsilon, zero_order=mode))


def integer_reduction_value(n: int, k: int, triple: ParameterTriple, epsilon: float = 0.0) -> complex:
    """Floating evaluation of ``S(n, k; eps)`` through the finite series."""
    return stirling_function(StirlingFunctionQuery(n, k, triple, epsilon))


def generalized_factorial_at_r(gamma, triple: ParameterTriple) -> complex:
    """``<r>_{gamma,-alpha}``, the value of ``S(gamma, 0; eps)``."""
    return factorial_function(float(triple.r), gamma, -triple.alpha)
