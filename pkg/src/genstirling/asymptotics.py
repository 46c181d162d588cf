"""Large-``mu`` expansions of ``S(n + mu, mu)`` and ``S(n, mu; eps)``.

For ``g(z) = sum_j a_j z^j`` with ``a_0 != 0`` the coefficients of ``g^mu``
satisfy

    [z^n] g^mu / [mu]_n = sum_{j<n} a_0^(mu-n+j) W(n, j) / [mu-n+j]_j

where ``W(n, j)`` sums ``prod a_i^k_i / k_i!`` over the partitions
``1^k_1 2^k_2 ...`` of ``n`` with ``n - j`` parts.  Keeping the first ``m``
terms gives an expansion in powers of ``1/mu``.

With ``eps = 0`` the base series is ``d(z) h(z)^mu / z^mu`` and
``[z^n] gbar^mu / [mu]_n = S(n+mu, mu) / ([mu]_n [n+mu]_n)``; with
``eps > 0`` it is ``[z^n] g^mu = mu! S(n, mu; eps) / n!``.  In both cases the
Stirling parameter ``r`` of the estimated number is ``mu`` times the ``r`` used
in the ``a_j`` ("central"), or the ``a_j`` use ``r / mu`` to estimate the
number at ``r`` itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import mpmath

from .core import stirling_offdiagonal
from .errors import InputError, UnsupportedParameterError
from .factorials import gen_factorial
from .triple import ParameterTriple


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All partitions of ``n`` as nonincreasing tuples, generated iteratively."""
    if n < 0:
        raise InputError("n must be nonnegative")
    if n == 0:
        yield ()
        return
    parts = [n]
    while True:
        yield tuple(parts)
        # strip trailing ones, then split the last part > 1
        ones = 0
        while parts and parts[-1] == 1:
            parts.pop()
            ones += 1
        if not parts:
            return
        last = parts.pop() - 1
        rest = ones + 1
        while rest > last:
            parts.append(last)
            rest -= last
        parts.append(last)
        if rest:
            parts.append(rest)


def multiplicities(parts: Sequence[int], n: int) -> tuple[int, ...]:
    """``(k_1, ..., k_n)`` for a partition of ``n``."""
    ks = [0] * n
    for p in parts:
        ks[p - 1] += 1
    return tuple(ks)


def partitions_with_parts(n: int, n_parts: int) -> list[tuple[int, ...]]:
    """Partitions of ``n`` with exactly ``n_parts`` parts, as multiplicity vectors."""
    return [multiplicities(p, n) for p in partitions(n) if len(p) == n_parts]


@lru_cache(maxsize=None)
def partition_count(n: int, n_parts: int) -> int:
    """``p(n, k)`` by ``p(n, k) = p(n-1, k-1) + p(n-k, k)``."""
    if n == 0 and n_parts == 0:
        return 1
    if n <= 0 or n_parts <= 0 or n_parts > n:
        return 0
    return partition_count(n - 1, n_parts - 1) + partition_count(n - n_parts, n_parts)


def w_coefficients(n: int, j: int, a: Sequence) -> Fraction | complex:
    """``W(n, j)``: sum over partitions of ``n`` into ``n - j`` parts.

    ``W(0, 0) = 1``.  Exact when the ``a_i`` are exact.
    """
    if n == 0 and j == 0:
        return Fraction(1)
    if not 0 <= j < n:
        raise InputError(f"W(n, j) needs 0 <= j < n, got n={n}, j={j}")
    # the largest part of a partition of n into n - j parts is j + 1
    if len(a) < j + 2:
        raise InputError(f"need base coefficients a_1..a_{j + 1}")
    total = Fraction(0)
    for ks in partitions_with_parts(n, n - j):
        term = Fraction(1)
        for i, k in enumerate(ks, start=1):
            if k:
                term = term * a[i] ** k / math.factorial(k)
        total = total + term
    return total


@dataclass(frozen=True)
class PartitionWeightTable:
    base_coefficients: tuple
    table: dict = field(default_factory=dict)

    @classmethod
    def build(cls, a: Sequence, n_max: int) -> "PartitionWeightTable":
        table = {(0, 0): Fraction(1)}
        for n in range(1, n_max + 1):
            for j in range(n):
                table[n, j] = w_coefficients(n, j, a)
        return cls(tuple(a), table)

    def __getitem__(self, nj):
        return self.table[nj]


def theorem51_coefficients(triple: ParameterTriple, epsilon: float, j_max: int) -> list:
    """``a_0..a_{j_max}`` of the base series.

    ``eps = 0``: ``a_j = (<r+beta>_{j+1,-alpha} - <r>_{j+1,-alpha}) / ((j+1)! beta)``, exact.
    ``eps > 0``: ``a_0 = (e^eps - 1)/beta`` and
    ``a_j = (e^eps <r+beta>_{j,-alpha} - <r>_{j,-alpha}) / (j! beta)`` as mpmath floats.
    Both are ``[z^j]`` of the base series, i.e. ``S(j+1, 1) / (j+1)!`` and
    ``S(j, 1; eps) / j!``.
    """
    alpha, beta, r = triple
    if beta == 0:
        raise UnsupportedParameterError("the expansion needs beta != 0")
    if j_max < 0:
        raise InputError("j_max must be nonnegative")
    if epsilon < 0:
        raise InputError("epsilon must be nonnegative")
    if epsilon == 0:
        return [
            (gen_factorial(r + beta, j + 1, -alpha) - gen_factorial(r, j + 1, -alpha)) / (math.factorial(j + 1) * beta)
            for j in range(j_max + 1)
        ]
    e = mpmath.e ** mpmath.mpf(epsilon)
    b = mpmath.mpf(beta.numerator) / beta.denominator
    out = [(e - 1) / b]
    for j in range(1, j_max + 1):
        up = _mp(gen_factorial(r + beta, j, -alpha))
        base = _mp(gen_factorial(r, j, -alpha))
        out.append((e * up - base) / (math.factorial(j) * b))
    return out


def _mp(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def _falling(x, j: int):
    out = 1
    for i in range(j):
        out *= x - i
    return out


@dataclass(frozen=True)
class AsymptoticEstimate:
    n: int
    mu: int
    terms: int
    normalized: object
    value: object
    target_r: Fraction


def _coefficient_triple(triple: ParameterTriple, mu: int, central: bool) -> ParameterTriple:
    return triple if central else ParameterTriple(triple.alpha, triple.beta, triple.r / mu)


def asym_estimate(
    n: int,
    mu: int,
    triple: ParameterTriple,
    epsilon: float = 0.0,
    m: int = 2,
    central: bool = False,
) -> AsymptoticEstimate:
    """``m``-term estimate (``j = 0..m-1``) of a Stirling number with large ``mu``.

    ``eps = 0`` estimates ``S(n + mu, mu)``; ``eps > 0`` estimates
    ``S(n, mu; eps)``.  With ``central`` the number is taken at parameter
    ``mu * r`` and the ``a_j`` at ``r``; otherwise the ``a_j`` use ``r / mu``
    and the number is taken at ``r``.  ``normalized`` is the truncated sum
    ``sum_j a_0^(j-n) W(n, j) / [mu-n+j]_j`` (times ``a_0^mu`` for ``eps > 0``).
    """
    if n < 0:
        raise InputError("n must be nonnegative")
    if mu < 1 or (n > 0 and mu <= n):
        raise InputError(f"need mu > n >= 0, got n={n}, mu={mu}")
    if m < 1:
        raise InputError("m counts expansion terms and must be at least 1")
    coef_triple = _coefficient_triple(triple, mu, central)
    a = theorem51_coefficients(coef_triple, epsilon, max(n, 1))
    a0 = a[0]
    terms = min(m, max(n, 1))
    total = 0
    for j in range(terms):
        w = w_coefficients(n, j, a)
        total += a0 ** (j - n) * w / _falling(mu - n + j, j)
    target_r = triple.r * mu if central else triple.r
    if epsilon == 0:
        normalized = total
        value = _falling(mu, n) * _falling(n + mu, n) * total
    else:
        normalized = a0**mu * total
        value = mpmath.factorial(n) / mpmath.factorial(mu) * _falling(mu, n) * normalized
    return AsymptoticEstimate(n, mu, terms, normalized, value, target_r)


def exact_reference(n: int, mu: int, alpha, beta, r, epsilon: float = 0.0):
    """Independent value of the estimated quantity.

    ``eps = 0``: exact ``S(n + mu, mu)`` from the recurrence.  ``eps > 0``:
    the finite difference sum for ``S(n, mu; eps)`` in high-precision mpmath.
    """
    triple = ParameterTriple.of(alpha, beta, r)
    if epsilon == 0:
        return stirling_offdiagonal(n, mu, triple)[n][mu]
    e = mpmath.mpf(epsilon)
    # cancellation loses about mu * log10((1 + e^eps) / (e^eps - 1)) digits
    lost = mu * math.log10((1 + math.exp(epsilon)) / math.expm1(epsilon))
    with mpmath.workdps(int(lost) + 40):
        a, b, rr = (_mp(v) for v in triple)
        total = mpmath.mpf(0)
        for j in range(mu + 1):
            x = rr + (mu - j) * b
            fac = mpmath.mpf(1)
            for i in range(n):
                fac *= x - i * a
            term = mpmath.binomial(mu, j) * mpmath.exp((mu - j) * e) * fac
            total += -term if j % 2 else term
        value = total / (b**mu * mpmath.factorial(mu))
    return +value


@dataclass(frozen=True)
class ErrorRow:
    mu: int
    exact: object
    estimate: object
    rel_error: float


@dataclass(frozen=True)
class ErrorStudy:
    n: int
    m: int
    triple: ParameterTriple
    epsilon: float
    rows: tuple
    decreasing: bool


def _relative_error(exact, estimate) -> float:
    if _is_exact(exact) and _is_exact(estimate):
        diff = abs(Fraction(estimate) - Fraction(exact))
        scale = abs(Fraction(exact))
        return float(diff / scale) if scale else float(diff)
    diff = abs(mpmath.mpf(estimate) - mpmath.mpf(exact))
    scale = abs(mpmath.mpf(exact))
    return float(diff / scale) if scale else float(diff)


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def asym_error_study(
    n: int,
    mu_grid: Sequence[int],
    triple: ParameterTriple,
    epsilon: float = 0.0,
    m: int = 2,
    central: bool = False,
) -> ErrorStudy:
    """Relative error of :func:`asym_estimate` against :func:`exact_reference` along ``mu_grid``.

    ``decreasing`` holds when the errors strictly decrease, or are all zero.
    """
    triple.require_nondegenerate()
    rows = []
    for mu in mu_grid:
        est = asym_estimate(n, mu, triple, epsilon, m, central)
        ref = exact_reference(n, mu, triple.alpha, triple.beta, est.target_r, epsilon)
        rows.append(ErrorRow(mu, ref, est.value, _relative_error(ref, est.value)))
    errs = [row.rel_error for row in rows]
    decreasing = all(e == 0 for e in errs) or all(b < a for a, b in zip(errs, errs[1:]))
    return ErrorStudy(n, m, triple, epsilon, tuple(rows), decreasing)
