"""Sheffer-type Riordan arrays of the generalized Stirling numbers.

The column generating functions are

    sum_n S(n, k) t^n / n! = d(t) h(t)^k / k!

with ``d(t) = (1 + alpha t)^(r/alpha)`` and
``h(t) = ((1 + alpha t)^(beta/alpha) - 1) / beta`` (and their limits when
alpha or beta vanish).  The classical Riordan entry ``[t^n] d h^k`` equals
``k! S(n, k) / n!``; the array is determined by its first column and the
A-sequence, defined through ``t A(h(t)) = h(t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import StirlingTriangle
from .errors import InputError, NotInvertibleError, UnsupportedParameterError
from .factorials import gen_factorial
from .numeric import (
    TruncatedSeries,
    default_order,
    series_binomial_power,
    series_compose,
    series_compositional_inverse,
    series_exp_scaled,
    series_log1p_scaled,
    series_mul,
    series_pow,
    series_reciprocal,
)
from .triple import ParameterTriple


@dataclass(frozen=True)
class RiordanPair:
    d: TruncatedSeries
    h: TruncatedSeries

    def __post_init__(self):
        if self.d.order != self.h.order:
            raise InputError("d and h must share a truncation order")
        if self.d[0] == 0:
            raise NotInvertibleError("d(0) must be nonzero")
        if self.h[0] != 0 or self.h.order < 2 or self.h[1] == 0:
            raise NotInvertibleError("h needs h(0) = 0 and h'(0) != 0")

    @property
    def order(self) -> int:
        return self.d.order


@dataclass(frozen=True)
class ASequence:
    terms: tuple

    def __post_init__(self):
        if not self.terms or self.terms[0] == 0:
            raise NotInvertibleError("an A-sequence needs a0 != 0")

    def __getitem__(self, i):
        return self.terms[i] if i < len(self.terms) else None

    def __len__(self):
        return len(self.terms)

    def series(self) -> TruncatedSeries:
        return TruncatedSeries(self.terms)


def stirling_generating_pair(triple: ParameterTriple, order: int | None = None) -> RiordanPair:
    """``(d, h)`` for the triple, exact through ``order`` coefficients."""
    order = default_order() if order is None else order
    if order < 2:
        raise InputError("order must be at least 2")
    alpha, beta, r = triple
    if alpha == 0:
        d = series_exp_scaled(r, order)
        if beta == 0:
            h = TruncatedSeries.of([Fraction(0), Fraction(1)], order)
        else:
            h = (series_exp_scaled(beta, order) - 1) / beta
    else:
        d = series_binomial_power(alpha, r / alpha, order)
        if beta == 0:
            h = series_log1p_scaled(alpha, order)
        else:
            h = (series_binomial_power(alpha, beta / alpha, order) - 1) / beta
    return RiordanPair(d, h)


def a_sequence_closed(triple: ParameterTriple, n_terms: int) -> ASequence:
    """``a_0 = 1``, ``a_n = -(1/alpha) sum_{k=1..n} a_{n-k} <alpha>_{k+1,-beta} / (k+1)!``.

    Also used with ``beta = 0``, where ``<alpha>_{k+1,0} = alpha^(k+1)``.
    """
    alpha, beta, _ = triple
    if alpha == 0:
        raise UnsupportedParameterError("the closed A-sequence needs alpha != 0; use the generic method")
    if n_terms < 1:
        raise InputError("n_terms must be positive")
    weights = [gen_factorial(alpha, k + 1, -beta) / math.factorial(k + 1) for k in range(n_terms)]
    a = [Fraction(1)]
    for n in range(1, n_terms):
        acc = sum((a[n - k] * weights[k] for k in range(1, n + 1)), Fraction(0))
        a.append(-acc / alpha)
    return ASequence(tuple(a))


def a_sequence_generic(h: TruncatedSeries) -> ASequence:
    """A-sequence of any admissible ``h`` as the coefficients of ``t / hbar(t)``.

    One coefficient is lost to the division by ``t``.
    """
    if h[0] != 0 or h.order < 2 or h[1] == 0:
        raise NotInvertibleError("h needs h(0) = 0 and h'(0) != 0")
    hbar = series_compositional_inverse(h)
    return ASequence(series_reciprocal(hbar.shift_down()).coeffs)


def a_sequence(triple: ParameterTriple, n_terms: int, method: str = "auto") -> ASequence:
    """Dispatch: ``closed`` (alpha != 0), ``generic``, or ``auto`` (closed when possible)."""
    if method == "auto":
        method = "closed" if triple.alpha != 0 else "generic"
    if method == "closed":
        return a_sequence_closed(triple, n_terms)
    if method == "generic":
        pair = stirling_generating_pair(triple, n_terms + 1)
        return a_sequence_generic(pair.h)
    raise InputError(f"unknown A-sequence method {method!r}")


def riordan_from_asequence(a: ASequence, triple: ParameterTriple, n_max: int) -> StirlingTriangle:
    """Triangle from ``R(n,k) = sum_j a_j R(n-1, k-1+j)`` with ``R(n,k) = k! S(n,k) / n!``.

    The first column is ``R(n, 0) = <r>_{n,-alpha} / n!``.  Terms with
    ``k - 1 + j > n - 1`` vanish, so the sum stops at ``j = n - k``.
    """
    if n_max < 0:
        raise InputError("n_max must be nonnegative")
    if len(a) < n_max + 1:
        raise InputError(f"need {n_max + 1} A-sequence terms, got {len(a)}")
    alpha, _, r = triple
    ratio_rows = [(Fraction(1),)]
    for n in range(1, n_max + 1):
        prev = ratio_rows[-1]
        row = [gen_factorial(r, n, -alpha) / math.factorial(n)]
        for k in range(1, n + 1):
            row.append(sum((a.terms[j] * prev[k - 1 + j] for j in range(n - k + 1)), Fraction(0)))
        ratio_rows.append(tuple(row))
    rows = tuple(
        tuple(v * math.factorial(n) / math.factorial(k) for k, v in enumerate(row)) for n, row in enumerate(ratio_rows)
    )
    return StirlingTriangle(triple, rows, "riordan")


def riordan_triangle(triple: ParameterTriple, n_max: int) -> StirlingTriangle:
    """The ``riordan`` algorithm: closed A-sequence when alpha != 0, generic otherwise."""
    triple.require_nondegenerate()
    return riordan_from_asequence(a_sequence(triple, n_max + 1), triple, n_max)


def coefficient_extract(pair: RiordanPair, n: int, k: int) -> Fraction:
    """Riordan entry ``[t^n] d(t) h(t)^k``, i.e. ``k! S(n, k) / n!``."""
    if n < 0 or k < 0:
        raise InputError("n and k must be nonnegative")
    if n >= pair.order:
        raise InputError(f"n = {n} is beyond the truncation order {pair.order}")
    if k > n:
        return Fraction(0)
    return series_mul(pair.d, series_pow(pair.h, k))[n]


def aseq_identity_holds(a: ASequence, h: TruncatedSeries) -> bool:
    """Exact check of ``t A(h(t)) = h(t)`` through the common truncation order."""
    n = min(len(a), h.order)
    h = TruncatedSeries(h.coeffs[:n])
    lhs = series_compose(TruncatedSeries(a.terms[:n]), h).shift_up()
    return lhs.coeffs == h.coeffs


def asequence_recurrence_holds(triangle: StirlingTriangle, a: ASequence) -> bool:
    """Spot-check ``R(n+1,k+1) = sum_j a_j R(n,k+j)`` on every entry of the triangle."""
    nm = triangle.n_max
    ratio = [[triangle[n, k] * math.factorial(k) / math.factorial(n) for k in range(n + 1)] for n in range(nm + 1)]
    for n in range(nm):
        for k in range(n + 1):
            rhs = sum((a.terms[j] * ratio[n][k + j] for j in range(n - k + 1)), Fraction(0))
            if ratio[n + 1][k + 1] != rhs:
                return False
    return True
