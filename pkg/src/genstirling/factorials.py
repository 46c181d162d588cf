"""Generalized factorials of integer and complex order, and the k-Gamma function.

``<z>_{n,d}`` denotes ``z (z + d) (z + 2d) ... (z + (n-1)d)``.  For complex
order the raising (``d = k > 0``) and falling (``d = -k``) versions are
continued through Gamma ratios; ``d = 0`` is the principal power ``z**gamma``.

This module also hosts the fractional difference of a factorial function,
the series from which the Stirling functions are built.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConvergenceRegimeError, InputError, NonConvergenceError, PoleError
from .numeric import (
    DensePolynomial,
    exact,
    is_nonpositive_integer,
    log_gamma,
    log_gamma_array,
)
from .triple import ParameterTriple

TERM_CAP = 10_000
STOP_RUN = 8


def gen_factorial(z, n: int, delta):
    """Exact ``<z>_{n,delta}``; the empty product (``n = 0``) is 1."""
    if n < 0:
        raise InputError("factorial order must be nonnegative")
    acc = Fraction(1) if not isinstance(z, (complex, float)) else 1
    for i in range(n):
        acc *= z + i * delta
    return acc


def gen_factorial_poly(n: int, delta, shift=0) -> DensePolynomial:
    """Expanded ``<z - shift>_{n,delta}`` as a monic polynomial of degree ``n``."""
    if n < 0:
        raise InputError("factorial order must be nonnegative")
    delta, shift = exact(delta), exact(shift)
    return DensePolynomial.from_roots(shift - i * delta for i in range(n))


def k_gamma(z, k: float) -> complex:
    """``Gamma_k(z) = k**(z/k - 1) * Gamma(z/k)``."""
    if k <= 0:
        raise InputError("k must be positive")
    w = complex(z) / k
    if is_nonpositive_integer(w):
        raise PoleError(f"Gamma_{k} has a pole at {z}", which="argument")
    return cmath.exp((w - 1) * math.log(k) + log_gamma(w))


def k_gamma_limit_probe(z, k: float, n: int) -> complex:
    """n-th term of ``n! k**n (n k)**(z/k - 1) / <z>_{n,k}``, which tends to ``Gamma_k(z)``.

    Evaluated in logarithms; the factorial is summed as ``sum(log(z + j k))``.
    """
    if k <= 0 or n < 1:
        raise InputError("need k > 0 and n >= 1")
    z = complex(z)
    factors = z + k * np.arange(n, dtype=np.float64)
    if np.any(factors == 0):
        raise PoleError(f"<{z}>_{{{n},{k}}} vanishes", which="denominator")
    log_poch = np.sum(np.log(factors.astype(np.complex128)))
    log_value = math.lgamma(n + 1) + n * math.log(k) + (z / k - 1) * math.log(n * k) - log_poch
    return cmath.exp(log_value)


def _integer_order(gamma) -> int | None:
    """``gamma`` as an int when it is a nonnegative integer, else None."""
    if isinstance(gamma, (int, Fraction)) and not isinstance(gamma, bool):
        return int(gamma) if gamma >= 0 and Fraction(gamma).denominator == 1 else None
    g = complex(gamma)
    if g.imag == 0 and g.real >= 0 and g.real == math.floor(g.real):
        return int(g.real)
    return None


def _gamma_ratio(num, den, scale, kpow):
    """``scale**kpow * Gamma(num) / Gamma(den)`` elementwise with pole bookkeeping.

    Denominator poles give 0; simultaneous poles take the limiting ratio
    ``(-1)**(m - m') m'! / m!`` for ``num -> -m``, ``den -> -m'``.
    """
    num = np.asarray(num, dtype=np.complex128)
    den = np.asarray(den, dtype=np.complex128)
    num_pole = _pole_mask(num)
    den_pole = _pole_mask(den)
    if np.any(num_pole & ~den_pole):
        bad = num[num_pole & ~den_pole].ravel()[0]
        raise PoleError(f"numerator Gamma argument {bad} is a pole", which="numerator")
    safe_num = np.where(num_pole, 0.5, num)
    safe_den = np.where(den_pole, 0.5, den)
    with np.errstate(all="ignore"):
        value = np.exp(kpow * math.log(scale) + log_gamma_array(safe_num) - log_gamma_array(safe_den))
    value = np.where(den_pole, 0.0, value)
    both = num_pole & den_pole
    if np.any(both):
        m = np.rint(-num.real[both]).astype(np.int64)
        mp = np.rint(-den.real[both]).astype(np.int64)
        kp = np.broadcast_to(np.asarray(kpow, dtype=np.complex128), num.shape)[both]
        limits = [
            (-1) ** int(a - b) * math.exp(math.lgamma(b + 1) - math.lgamma(a + 1)) * cmath.exp(kk * math.log(scale))
            for a, b, kk in zip(m, mp, kp)
        ]
        value = value.copy()
        value[both] = limits
    return value


def _pole_mask(z: np.ndarray) -> np.ndarray:
    re, im = z.real, z.imag
    tol = 1e-12 * np.maximum(1.0, np.abs(re))
    return (np.abs(im) <= tol) & (re <= 0.5) & (np.abs(re - np.rint(re)) <= tol)


def _factorial_array(x: np.ndarray, gamma, increment) -> np.ndarray:
    """Vectorized ``<x>_{gamma,increment>`` for real increment."""
    x = np.asarray(x, dtype=np.complex128)
    n = _integer_order(gamma)
    d = float(increment)
    if n is not None:
        out = np.ones_like(x)
        for i in range(n):
            out = out * (x + i * d)
        return out
    g = complex(gamma)
    if d == 0:
        zero = x == 0
        if np.any(zero) and g.real <= 0:
            raise PoleError(f"0**{g} is undefined", which="base")
        with np.errstate(all="ignore"):
            out = np.exp(g * np.log(np.where(zero, 1.0, x)))
        return np.where(zero, 0.0, out)
    k = abs(d)
    if d < 0:
        return _gamma_ratio(x / k + 1, x / k - g + 1, k, g)
    return _gamma_ratio(x / k + g, x / k, k, g)


def gen_factorial_function(z, gamma, k: float, falling: bool = False) -> complex:
    """Raising ``<z>_{gamma,k}`` or falling ``<z>_{gamma,-k}`` factorial function.

    Raising: ``Gamma_k(z + gamma k) / Gamma_k(z)``.
    Falling: ``Gamma_k(z + k) / Gamma_k(z - (gamma - 1) k)``.
    """
    if k <= 0:
        raise InputError("k must be positive; use falling=True for a negative increment")
    w = complex(z) / k
    g = complex(gamma)
    if falling:
        value = _gamma_ratio(w + 1, w - g + 1, k, g)
    else:
        value = _gamma_ratio(w + g, w, k, g)
    return complex(value)


def factorial_function(x, gamma, increment) -> complex:
    """``<x>_{gamma,increment}`` for any real increment; integer order uses the product."""
    return complex(_factorial_array(np.asarray(complex(x)), gamma, increment))


# ---------------------------------------------------------------------------
# Fractional difference of the falling factorial function


@dataclass(frozen=True)
class SeriesSum:
    """Value of a fractional-difference series plus how it was obtained."""

    value: complex
    terms: int
    method: str  # "finite", "direct" or "extrapolated"
    error_estimate: float = 0.0


def convergence_regime(gamma, eta, epsilon: float) -> str:
    """Classify a query; raise :class:`ConvergenceRegimeError` outside all regimes.

    ``"finite"`` for a nonnegative integer ``eta``; ``"damped"`` for
    ``epsilon > 0``; ``"algebraic"`` for ``epsilon = 0`` with ``Re eta > Re gamma``.
    """
    if epsilon < 0:
        raise ConvergenceRegimeError("epsilon must be nonnegative")
    eta_c = complex(eta)
    if _integer_order(eta) is not None:
        return "finite"
    if eta_c.imag == 0 and eta_c.real == math.floor(eta_c.real):
        raise ConvergenceRegimeError(f"eta = {eta} is a negative integer")
    if epsilon > 0:
        return "damped"
    if eta_c.real > complex(gamma).real:
        return "algebraic"
    raise ConvergenceRegimeError(
        f"epsilon = 0 requires Re(eta) > Re(gamma); got eta = {eta}, gamma = {gamma}"
    )


def _terms(gamma, eta, triple: ParameterTriple, epsilon: float, start: int, stop: int, coef0):
    """Terms ``start .. stop-1`` of the series and the binomial coefficient at ``stop``.

    ``coef0`` is ``(-1)**start * binom(eta, start)``.
    """
    eta_c = complex(eta)
    j = np.arange(start, stop, dtype=np.float64)
    # c_j = c_{j-1} * (j - 1 - eta) / j
    steps = (j[1:] - 1 - eta_c) / j[1:]
    coefs = coef0 * np.concatenate(([1.0 + 0j], np.cumprod(steps)))
    next_coef = coefs[-1] * (stop - 1 - eta_c) / stop
    shift = eta_c - j
    x = float(triple.r) + shift * float(triple.beta)
    values = _factorial_array(x, gamma, -triple.alpha)
    if epsilon:
        values = values * np.exp(shift * epsilon)
    return coefs * values, next_coef


def _period(triple: ParameterTriple) -> int:
    """Period in ``j`` of the oscillating factor of the terms (1 unless alpha != 0)."""
    if triple.alpha == 0:
        return 1
    return (triple.beta / triple.alpha).denominator


def frac_difference_sum(
    gamma,
    eta,
    triple: ParameterTriple,
    epsilon: float = 0.0,
    tol: float = 1e-12,
    max_terms: int = TERM_CAP,
) -> SeriesSum:
    """``sum_j (-1)**j binom(eta, j) e**((eta-j) eps) <r + (eta-j) beta>_{gamma,-alpha}``.

    Integer ``eta >= 0`` sums its ``eta + 1`` nonzero terms.  With damping
    (``epsilon > 0``) terms are added until ``STOP_RUN`` consecutive ones fall
    below ``tol * max(1, |partial sum|)``.  Without damping the tail decays
    only like ``j**(gamma - eta - 1)``, so partial sums at geometrically spaced
    cut-offs are extrapolated in the known tail exponent.
    """
    if triple.beta <= 0:
        raise ConvergenceRegimeError("the difference step beta must be positive")
    regime = convergence_regime(gamma, eta, epsilon)
    if regime == "finite":
        k = _integer_order(eta)
        terms, _ = _terms(gamma, eta, triple, epsilon, 0, k + 1, 1.0 + 0j)
        return SeriesSum(complex(terms.sum()), k + 1, "finite")
    if regime == "damped":
        return _sum_damped(gamma, eta, triple, epsilon, tol, max_terms)
    return _sum_extrapolated(gamma, eta, triple, tol, max_terms)


def _sum_damped(gamma, eta, triple, epsilon, tol, max_terms) -> SeriesSum:
    total = 0j
    coef = 1.0 + 0j
    start, run, chunk = 0, 0, 256
    while start < max_terms:
        stop = min(start + chunk, max_terms)
        terms, coef = _terms(gamma, eta, triple, epsilon, start, stop, coef)
        partial = total + np.cumsum(terms)
        small = np.abs(terms) < tol * np.maximum(1.0, np.abs(partial))
        for i, flag in enumerate(small):
            run = run + 1 if flag else 0
            if run == STOP_RUN:
                return SeriesSum(complex(partial[i]), start + i + 1, "direct", float(abs(terms[i])))
        total = complex(partial[-1])
        start = stop
    raise NonConvergenceError(f"series not converged after {max_terms} terms")


def _sum_extrapolated(gamma, eta, triple, tol, max_terms) -> SeriesSum:
    q = _period(triple)
    s = complex(gamma) - complex(eta)
    reach = abs(complex(eta)) + abs(complex(gamma)) + float(abs(triple.r / triple.beta))
    if triple.alpha:
        reach += float(abs(triple.alpha / triple.beta)) * (abs(complex(gamma)) + 1)
    blocks = max(8, math.ceil((16 + 2 * reach) / q))
    levels = 6
    while levels >= 3 and q * blocks * 2**levels > max_terms:
        levels -= 1
    if levels < 3:
        raise NonConvergenceError(
            f"extrapolation needs more than {max_terms} terms (period {q}, start {q * blocks})"
        )
    cuts = [q * blocks * 2**i for i in range(levels + 1)]
    terms, _ = _terms(gamma, eta, triple, 0.0, 0, cuts[-1], 1.0 + 0j)
    partial = np.cumsum(terms)
    sums = np.array([partial[c - 1] for c in cuts])
    best = _richardson(sums, cuts, s, levels)
    coarse = _richardson(sums[1:], cuts[1:], s, levels - 1)
    err = abs(best - coarse)
    scale = max(1.0, abs(best))
    if not math.isfinite(err) or err > max(tol, 1e-9) * scale:
        raise NonConvergenceError(
            f"extrapolated tail not settled: estimate moved by {err:.3g} (value {best:.6g})"
        )
    return SeriesSum(complex(best), cuts[-1], "extrapolated", err)


def _richardson(sums: np.ndarray, cuts, s: complex, n_powers: int) -> complex:
    """Limit of ``S_J = S + sum_{k < n_powers} c_k J**(s - k)`` from ``n_powers + 1`` samples."""
    base = cuts[0]
    rows = []
    for c in cuts:
        u = c / base
        rows.append([1.0] + [u ** (s - k) for k in range(n_powers)])
    matrix = np.array(rows, dtype=np.complex128)
    return complex(np.linalg.solve(matrix, sums.astype(np.complex128))[0])


def frac_difference_factorial(
    gamma, eta, triple: ParameterTriple, epsilon: float = 0.0, tol: float = 1e-12
) -> complex:
    """``Delta_beta^{eta,eps} <z>_{gamma,-alpha}`` at ``z = r``."""
    return frac_difference_sum(gamma, eta, triple, epsilon, tol).value
