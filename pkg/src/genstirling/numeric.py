"""Exact scalars, dense polynomials, truncated power series and log-Gamma.

Exact work is done with :class:`fractions.Fraction`; complex work with the
builtin :class:`complex`.  Series coefficients may be either, and mixed
arithmetic promotes to complex the usual Python way.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number, Rational
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InputError, NotInvertibleError, PoleError

Scalar = Union[Fraction, complex]

ORDER_ENV = "GENSTIRLING_SERIES_ORDER"


def default_order() -> int:
    """Series truncation order, overridable through ``GENSTIRLING_SERIES_ORDER``."""
    raw = os.environ.get(ORDER_ENV)
    if raw is None:
        return 32
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{ORDER_ENV} must be a positive integer, got {raw!r}")
    if value < 1:
        raise InputError(f"{ORDER_ENV} must be a positive integer, got {raw!r}")
    return value


def exact(x) -> Fraction:
    """Coerce ints, Fractions, decimal strings and finite floats to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InputError(f"cannot make {x!r} exact")
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational number: {x!r}")
    raise InputError(f"cannot make {type(x).__name__} exact")


def _promote(c):
    # plain ints become Fractions so later division stays exact
    return Fraction(c) if isinstance(c, int) and not isinstance(c, bool) else c


# ---------------------------------------------------------------------------
# Dense polynomials


@dataclass(frozen=True)
class DensePolynomial:
    """Univariate polynomial; ``coeffs[i]`` multiplies ``z**i``."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = [_promote(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "DensePolynomial":
        """Monic polynomial with the given roots (multiplicity respected)."""
        c = [Fraction(1)]
        for root in roots:
            nxt = [Fraction(0)] * (len(c) + 1)
            for i, ci in enumerate(c):
                nxt[i + 1] += ci
                nxt[i] -= root * ci
            c = nxt
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, z):
        return poly_eval(self, z)

    def __add__(self, other: "DensePolynomial") -> "DensePolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return DensePolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "DensePolynomial":
        return DensePolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "DensePolynomial") -> "DensePolynomial":
        return self + (-other)

    def __mul__(self, other) -> "DensePolynomial":
        if not isinstance(other, DensePolynomial):
            return DensePolynomial(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return DensePolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return DensePolynomial(tuple(out))

    __rmul__ = __mul__


def poly_eval(p: DensePolynomial, z):
    """Horner evaluation; exact when ``z`` and the coefficients are."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def poly_derivative(p: DensePolynomial, order: int = 1) -> DensePolynomial:
    if order < 0:
        raise InputError("derivative order must be nonnegative")
    c = list(p.coeffs)
    for _ in range(order):
        c = [i * c[i] for i in range(1, len(c))]
    return DensePolynomial(tuple(c))


def synthetic_division(p: DensePolynomial, c) -> tuple[DensePolynomial, Scalar]:
    """Divide ``p`` by ``(z - c)``; returns ``(quotient, remainder)``."""
    if p.is_zero():
        return DensePolynomial(), Fraction(0)
    coeffs = p.coeffs
    n = len(coeffs) - 1
    q = [0] * n
    acc = coeffs[n]
    for i in range(n - 1, -1, -1):
        q[i] = acc
        acc = coeffs[i] + acc * c
    return DensePolynomial(tuple(q)), acc


def forward_difference_at(p: DensePolynomial, step, order: int, z=0):
    """``order``-th forward difference of ``p`` with step ``step`` at ``z``."""
    total = 0
    for j in range(order + 1):
        term = math.comb(order, j) * p(z + j * step)
        total += term if (order - j) % 2 == 0 else -term
    return total


# ---------------------------------------------------------------------------
# Truncated power series


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series known through ``order`` coefficients (``t**0 .. t**(order-1)``)."""

    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise InputError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(_promote(c) for c in self.coeffs))

    @classmethod
    def of(cls, coeffs: Sequence, order: int | None = None) -> "TruncatedSeries":
        """Pad with zeros or cut ``coeffs`` to exactly ``order`` entries."""
        order = len(coeffs) if order is None else order
        c = list(coeffs[:order])
        c += [Fraction(0)] * (order - len(c))
        return cls(tuple(c))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            n = _common_order(self, other)
            return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))
        return TruncatedSeries((self.coeffs[0] + other,) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return TruncatedSeries(tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, series_reciprocal(other))
        return TruncatedSeries(tuple(c / other for c in self.coeffs))

    def __pow__(self, exponent: int):
        return series_pow(self, exponent)

    def shift_down(self) -> "TruncatedSeries":
        """Divide by ``t``; requires a zero constant term, loses one order."""
        if self.coeffs[0] != 0:
            raise NotInvertibleError("constant term is nonzero; cannot divide by t")
        if self.order < 2:
            raise InputError("series too short to divide by t")
        return TruncatedSeries(self.coeffs[1:])

    def shift_up(self) -> "TruncatedSeries":
        """Multiply by ``t`` keeping the truncation order."""
        return TruncatedSeries((Fraction(0),) + self.coeffs[:-1])

    def to_complex(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(complex(c) for c in self.coeffs))


def _common_order(x: TruncatedSeries, y: TruncatedSeries) -> int:
    return min(x.order, y.order)


def series_mul(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    n = _common_order(x, y)
    a, b = x.coeffs, y.coeffs
    out = []
    for k in range(n):
        acc = 0
        for i in range(k + 1):
            ai = a[i]
            if ai:
                acc += ai * b[k - i]
        out.append(acc)
    return TruncatedSeries(tuple(out))


def series_pow(x: TruncatedSeries, exponent: int) -> TruncatedSeries:
    """Nonnegative integer power by repeated squaring."""
    if isinstance(exponent, bool) or not isinstance(exponent, int) or exponent < 0:
        raise InputError("series_pow takes a nonnegative integer exponent")
    result = TruncatedSeries.of([Fraction(1)], x.order)
    base = x
    while exponent:
        if exponent & 1:
            result = series_mul(result, base)
        exponent >>= 1
        if exponent:
            base = series_mul(base, base)
    return result


def series_reciprocal(x: TruncatedSeries) -> TruncatedSeries:
    a = x.coeffs
    if a[0] == 0:
        raise NotInvertibleError("series with zero constant term has no reciprocal")
    inv0 = 1 / a[0]
    out = [inv0]
    for k in range(1, x.order):
        acc = 0
        for i in range(1, k + 1):
            acc += a[i] * out[k - i]
        out.append(-acc * inv0)
    return TruncatedSeries(tuple(out))


def series_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """``f(g(t))`` for ``g`` with zero constant term (Horner in ``g``)."""
    if g.coeffs[0] != 0:
        raise NotInvertibleError("inner series must have zero constant term")
    n = _common_order(f, g)
    g = TruncatedSeries(g.coeffs[:n])
    acc = TruncatedSeries.of([f.coeffs[n - 1]], n)
    for c in reversed(f.coeffs[: n - 1]):
        acc = series_mul(acc, g) + c
    return acc


def series_compositional_inverse(h: TruncatedSeries) -> TruncatedSeries:
    """Series ``hbar`` with ``h(hbar(t)) = t`` through the truncation order.

    Uses Lagrange inversion, ``[t^n] hbar = (1/n) [t^(n-1)] (t/h(t))^n``,
    accumulating the powers of ``t/h(t)`` one factor at a time.
    """
    c = h.coeffs
    if c[0] != 0:
        raise NotInvertibleError("h(0) must vanish for a compositional inverse")
    if h.order < 2 or c[1] == 0:
        raise NotInvertibleError("h'(0) must be nonzero for a compositional inverse")
    n = h.order
    phi = series_reciprocal(TruncatedSeries.of(c[1:], n - 1))  # t / h(t)
    out = [c[0] * 0, 1 / c[1]]
    power = phi
    for k in range(2, n):
        power = series_mul(power, phi)
        out.append(power.coeffs[k - 1] / k)
    return TruncatedSeries.of(out[:n], n)


def series_binomial_power(a, q, order: int | None = None) -> TruncatedSeries:
    """Coefficients of ``(1 + a t)**q``: ``binom(q, j) * a**j``."""
    order = default_order() if order is None else order
    if order < 1:
        raise InputError("order must be positive")
    out = [Fraction(1) if not isinstance(q, complex) else complex(1)]
    coef = out[0]
    for j in range(1, order):
        coef = coef * (q - (j - 1)) / j * a
        out.append(coef)
    return TruncatedSeries(tuple(out))


def series_exp_scaled(c, order: int | None = None) -> TruncatedSeries:
    """Coefficients of ``exp(c t)``: ``c**j / j!``."""
    order = default_order() if order is None else order
    if order < 1:
        raise InputError("order must be positive")
    out = [Fraction(1) if not isinstance(c, (complex, float)) else complex(1)]
    for j in range(1, order):
        out.append(out[-1] * c / j)
    return TruncatedSeries(tuple(out))


def series_log1p_scaled(a, order: int | None = None) -> TruncatedSeries:
    """Coefficients of ``log(1 + a t) / a`` (``t`` when ``a`` is zero)."""
    order = default_order() if order is None else order
    out = [Fraction(0)]
    for j in range(1, order):
        out.append((-a) ** (j - 1) / Fraction(j))
    return TruncatedSeries(tuple(out))


def series_log(x: TruncatedSeries) -> TruncatedSeries:
    """Principal-branch ``log`` of a series with nonzero constant term."""
    a = x.coeffs
    if a[0] == 0:
        raise NotInvertibleError("log of a series with zero constant term")
    n = x.order
    # log x = log a0 + integral(x'/x); n * L_n = n a_n / a0 - sum_{k<n} k L_k a_{n-k} / a0
    out = [cmath.log(a[0]) if not (isinstance(a[0], Fraction) and a[0] == 1) else Fraction(0)]
    for m in range(1, n):
        acc = m * a[m]
        for k in range(1, m):
            acc -= k * out[k] * a[m - k]
        out.append(acc / (m * a[0]))
    return TruncatedSeries(tuple(out))


def series_exp(x: TruncatedSeries) -> TruncatedSeries:
    """``exp`` of a series; the constant term may be nonzero."""
    a = x.coeffs
    n = x.order
    e0 = cmath.exp(a[0]) if a[0] != 0 else Fraction(1)
    out = [e0]
    for m in range(1, n):
        acc = 0
        for k in range(1, m + 1):
            acc += k * a[k] * out[m - k]
        out.append(acc / m)
    return TruncatedSeries(tuple(out))


def series_complex_power(x: TruncatedSeries, exponent: complex) -> TruncatedSeries:
    """``x**exponent`` on the principal branch, as ``x0**e * exp(e*log(x/x0))``.

    The constant term must be nonzero; :class:`BranchError` is left to callers
    that need to police the cut.
    """
    a0 = x.coeffs[0]
    if a0 == 0:
        raise NotInvertibleError("complex power of a series with zero constant term")
    normalized = TruncatedSeries(tuple(complex(c) / complex(a0) for c in x.coeffs))
    lead = cmath.exp(exponent * cmath.log(complex(a0)))
    return series_exp(series_log(normalized) * exponent) * lead


# ---------------------------------------------------------------------------
# log-Gamma (Lanczos, g = 607/128, Godfrey coefficients)

_LANCZOS_G = 607 / 128
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
_LOG_PI = math.log(math.pi)


def is_nonpositive_integer(z, rtol: float = 1e-12) -> bool:
    z = complex(z)
    if abs(z.imag) > rtol * max(1.0, abs(z.real)):
        return False
    if z.real > 0.5:
        return False
    return abs(z.real - round(z.real)) <= rtol * max(1.0, abs(z.real))


def _lanczos(z: complex) -> complex:
    z = z - 1
    acc = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def log_gamma(z) -> complex:
    """``log Gamma(z)`` for complex ``z``; reflection handles ``Re z < 0.5``.

    The imaginary part is only determined modulo ``2*pi`` left of the line
    ``Re z = 0.5``; ``exp`` of the result is what the accuracy contract covers.
    """
    z = complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z}", which="argument")
    if z.real < 0.5:
        return _LOG_PI - cmath.log(cmath.sin(math.pi * z)) - _lanczos(1 - z)
    return _lanczos(z)


def log_gamma_array(z: np.ndarray) -> np.ndarray:
    """Vectorized :func:`log_gamma`; poles are not checked (they produce inf/nan)."""
    z = np.asarray(z, dtype=np.complex128)
    left = z.real < 0.5
    w = np.where(left, 1 - z, z) - 1
    acc = np.full(w.shape, _LANCZOS_C[0], dtype=np.complex128)
    for k in range(1, len(_LANCZOS_C)):
        acc = acc + _LANCZOS_C[k] / (w + k)
    t = w + _LANCZOS_G + 0.5
    core = _HALF_LOG_2PI + (w + 0.5) * np.log(t) - t + np.log(acc)
    with np.errstate(all="ignore"):
        reflected = _LOG_PI - np.log(np.sin(np.pi * z)) - core
    return np.where(left, reflected, core)


def gamma(z) -> complex:
    return cmath.exp(log_gamma(z))


def as_number(x) -> Number:
    """Pass Fractions through; everything else becomes complex."""
    if isinstance(x, (Fraction, int)):
        return Fraction(x)
    return complex(x)
