"""Generalized Stirling numbers ``S(n, k, alpha, beta, r)``.

They are the connection coefficients in

    <z>_{n,-alpha} = sum_k S(n, k) <z - r>_{k,-beta}

and every algorithm here computes them exactly over the rationals:

* ``explicit``   -- finite-difference formula (derivatives when beta = 0)
* ``dd``         -- the divided-difference table, read along its diagonal
* ``horner``     -- repeated synthetic division of the expanded factorial
* ``recurrence`` -- ``S(n,k) = (r + k beta - (n-1) alpha) S(n-1,k) + S(n-1,k-1)``
* ``riordan``    -- the A-sequence recurrence (see :mod:`genstirling.riordan`)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .factorials import gen_factorial, gen_factorial_poly
from .numeric import exact, forward_difference_at, poly_derivative, synthetic_division
from .triple import ParameterTriple

ALGORITHMS = ("explicit", "dd", "horner", "recurrence", "riordan")


@dataclass(frozen=True)
class StirlingTriangle:
    """Rows ``0..n_max`` of ``S(n, k)``; row ``n`` has ``n + 1`` entries."""

    triple: ParameterTriple
    rows: tuple
    algorithm: str = ""

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def __getitem__(self, nk):
        n, k = nk
        if k < 0 or n < 0:
            raise IndexError(nk)
        if k > n:
            return Fraction(0)
        return self.rows[n][k]

    def row(self, n: int) -> tuple:
        return self.rows[n]

    def as_matrix(self) -> list[list[Fraction]]:
        size = len(self.rows)
        return [[self[n, k] for k in range(size)] for n in range(size)]

    def entries(self):
        """Yield ``(n, k, S(n, k))`` row by row."""
        for n, row in enumerate(self.rows):
            for k, v in enumerate(row):
                yield n, k, v

    def same_values(self, other: "StirlingTriangle") -> bool:
        return self.rows == other.rows


def _check(n: int, triple: ParameterTriple) -> None:
    if n < 0:
        raise InputError("n must be nonnegative")
    triple.require_nondegenerate()


def stirling_explicit(n: int, k: int, triple: ParameterTriple) -> Fraction:
    """One entry from the closed formula.

    ``beta != 0``: ``(1/(beta^k k!)) sum_j (-1)^j C(k,j) <r + (k-j) beta>_{n,-alpha}``.
    ``beta == 0``: ``D^k <z>_{n,-alpha} / k!`` at ``z = r``.
    """
    if n == 0 and k == 0:
        return Fraction(1)
    _check(n, triple)
    if k < 0:
        raise InputError("k must be nonnegative")
    if k > n:
        return Fraction(0)
    alpha, beta, r = triple
    if beta == 0:
        poly = gen_factorial_poly(n, -alpha)
        return poly_derivative(poly, k)(r) / math.factorial(k)
    total = Fraction(0)
    for j in range(k + 1):
        term = math.comb(k, j) * gen_factorial(r + (k - j) * beta, n, -alpha)
        total += -term if j % 2 else term
    return total / (beta**k * math.factorial(k))


@dataclass(frozen=True)
class DividedDifferenceTable:
    """The lower-triangular divided-difference table for one ``n``.

    ``table[i][j]`` is the j-th divided difference of ``<z>_{n,-alpha}`` on the
    nodes ``r + (i-j) beta, ..., r + i beta``.  Its diagonal is row ``n`` of
    the triangle; ``next_row`` is row ``n + 1`` recovered from the subdiagonal.
    """

    n: int
    triple: ParameterTriple
    table: tuple
    diagonal: tuple
    subdiagonal: tuple
    next_row: tuple = field(default=())


def stirling_triangle_dd(n: int, triple: ParameterTriple) -> DividedDifferenceTable:
    """Build the divided-difference table column by column.

    Column ``j`` comes from column ``j - 1`` by ``(right - left) / (j beta)``.
    With ``beta = 0`` all nodes coincide and the j-th column is
    ``D^j <z>_{n,-alpha}(r) / j!``.

    The subdiagonal entry in row ``i`` is the divided difference on
    ``r + beta .. r + i beta``; since
    ``<z>_{n+1,-alpha} = (z - r) <z>_{n,-alpha} + (r - n alpha) <z>_{n,-alpha}``,
    ``S(n+1, i) = subdiagonal[i-1] + (r - n alpha) S(n, i)``.
    """
    _check(n, triple)
    alpha, beta, r = triple
    size = n + 1
    if beta == 0:
        poly = gen_factorial_poly(n, -alpha)
        taylor = []
        p = poly
        for j in range(size):
            taylor.append(p(r) / math.factorial(j))
            p = poly_derivative(p)
        table = tuple(tuple(taylor[: i + 1]) for i in range(size))
    else:
        cols = [[gen_factorial(r + i * beta, n, -alpha) for i in range(size)]]
        for j in range(1, size):
            prev = cols[-1]
            cols.append([(prev[t + 1] - prev[t]) / (j * beta) for t in range(len(prev) - 1)])
        # cols[j][t] covers nodes r + t beta .. r + (t + j) beta, i.e. row i = t + j
        table = tuple(tuple(cols[j][i - j] for j in range(i + 1)) for i in range(size))
    diagonal = tuple(table[i][i] for i in range(size))
    subdiagonal = tuple(table[i][i - 1] for i in range(1, size))
    shift = r - n * alpha
    next_row = (gen_factorial(r, n + 1, -alpha),)
    next_row += tuple(subdiagonal[i - 1] + shift * diagonal[i] for i in range(1, size))
    next_row += (Fraction(1),)
    return DividedDifferenceTable(n, triple, table, diagonal, subdiagonal, next_row)


def stirling_row_horner(n: int, triple: ParameterTriple) -> tuple:
    """Row ``n`` by synthetic division of ``<z>_{n,-alpha}`` by ``z - r - m beta``, m = 0, 1, ..."""
    _check(n, triple)
    alpha, beta, r = triple
    poly = gen_factorial_poly(n, -alpha)
    out = []
    for m in range(n):
        poly, rem = synthetic_division(poly, r + m * beta)
        out.append(rem)
    out.append(poly.coeffs[0] if poly.coeffs else Fraction(0))
    return tuple(Fraction(v) for v in out)


def stirling_triangle_recurrence(n_max: int, triple: ParameterTriple) -> StirlingTriangle:
    _check(n_max, triple)
    alpha, beta, r = triple
    rows = [(Fraction(1),)]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = []
        for k in range(n + 1):
            v = Fraction(0)
            if k < n:
                v += (r + k * beta - (n - 1) * alpha) * prev[k]
            if k > 0:
                v += prev[k - 1]
            row.append(v)
        rows.append(tuple(row))
    return StirlingTriangle(triple, tuple(rows), "recurrence")


def stirling_offdiagonal(d_max: int, k_max: int, triple: ParameterTriple) -> list[list[Fraction]]:
    """``band[d][k] = S(k + d, k)`` for ``d <= d_max``, ``k <= k_max`` by the recurrence.

    Touches only the band below the diagonal, so columns far out (large ``k``)
    stay cheap.
    """
    triple.require_nondegenerate()
    alpha, beta, r = triple
    band = [[Fraction(1)] * (k_max + 1)]
    for d in range(1, d_max + 1):
        above = band[-1]
        col = [gen_factorial(r, d, -alpha)]
        for k in range(1, k_max + 1):
            col.append((r + k * beta - (k + d - 1) * alpha) * above[k] + col[k - 1])
        band.append(col)
    return band


def build_triangle(n_max: int, triple: ParameterTriple, algorithm: str = "recurrence") -> StirlingTriangle:
    """Full triangle up to ``n_max`` by the named algorithm."""
    _check(n_max, triple)
    if algorithm == "recurrence":
        return stirling_triangle_recurrence(n_max, triple)
    if algorithm == "explicit":
        rows = [tuple(stirling_explicit(n, k, triple) for k in range(n + 1)) for n in range(n_max + 1)]
    elif algorithm == "dd":
        rows = [stirling_triangle_dd(n, triple).diagonal for n in range(n_max + 1)]
    elif algorithm == "horner":
        rows = [stirling_row_horner(n, triple) for n in range(n_max + 1)]
    elif algorithm == "riordan":
        from .riordan import riordan_triangle

        return riordan_triangle(triple, n_max)
    else:
        raise InputError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    return StirlingTriangle(triple, tuple(rows), algorithm)


# ---------------------------------------------------------------------------
# Verification identities


@dataclass
class VerifyReport:
    name: str
    passed: bool
    checked: int = 0
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)


def _matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    size = len(a)
    return [[sum((a[i][t] * b[t][j] for t in range(size)), Fraction(0)) for j in range(size)] for i in range(size)]


def verify_pair_inverse(n_max: int, triple: ParameterTriple) -> VerifyReport:
    """``[S(.,.; alpha, beta, r)] [S(.,.; beta, alpha, -r)]`` must be the identity."""
    _check(n_max, triple)
    first = stirling_triangle_recurrence(n_max, triple).as_matrix()
    second = stirling_triangle_recurrence(n_max, triple.dual()).as_matrix()
    product = _matmul(first, second)
    checked = 0
    for i, row in enumerate(product):
        for j, v in enumerate(row):
            checked += 1
            if v != (1 if i == j else 0):
                return VerifyReport("pair-inverse", False, checked, {"n": i, "k": j, "value": v})
    return VerifyReport("pair-inverse", True, checked, details={"dual": triple.dual()})


def verify_expansion(n: int, triple: ParameterTriple, z_samples: Sequence) -> VerifyReport:
    """``<z>_{n,-alpha} = sum_k S(n,k) <z - r>_{k,-beta}`` at each sample point."""
    _check(n, triple)
    alpha, beta, r = triple
    row = stirling_row_horner(n, triple) if n else (Fraction(1),)
    checked = 0
    for z in z_samples:
        z = exact(z)
        lhs = gen_factorial(z, n, -alpha)
        rhs = sum((row[k] * gen_factorial(z - r, k, -beta) for k in range(n + 1)), Fraction(0))
        checked += 1
        if lhs != rhs:
            return VerifyReport("expansion", False, checked, {"n": n, "z": z, "lhs": lhs, "rhs": rhs})
    return VerifyReport("expansion", True, checked)


def verify_remark22(n: int, triple: ParameterTriple) -> VerifyReport:
    """``n! alpha^n = sum_k S(n,k) Delta_alpha^n <z - r>_{k,-beta}`` at 0 (``D^n`` when alpha = 0)."""
    _check(n, triple)
    alpha, beta, r = triple
    row = stirling_row_horner(n, triple) if n else (Fraction(1),)
    rhs = Fraction(0)
    for k in range(n + 1):
        basis = gen_factorial_poly(k, -beta, r)
        if alpha == 0:
            value = poly_derivative(basis, n)(Fraction(0))
        else:
            value = forward_difference_at(basis, alpha, n)
        rhs += row[k] * value
    lhs = math.factorial(n) * (alpha**n if alpha != 0 else 1)
    passed = lhs == rhs
    report = VerifyReport("remark22", passed, 1, details={"lhs": Fraction(lhs), "rhs": rhs})
    if not passed:
        report.counterexample = {"n": n, "lhs": Fraction(lhs), "rhs": rhs}
    return report


def basis_difference(k: int, j: int, beta) -> Fraction:
    """``Delta_beta^k <z>_{j,-beta}`` at ``z = 0``; equals ``beta^k k!`` when ``j == k``, else 0."""
    beta = exact(beta)
    return Fraction(forward_difference_at(gen_factorial_poly(j, -beta), beta, k))
