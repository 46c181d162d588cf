from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateTripleError
from .numeric import exact


@dataclass(frozen=True)
class ParameterTriple:
    """The ``(alpha, beta, r)`` parameters of a generalized Stirling family.

    ``alpha`` is the (negated) increment of the factorial being expanded,
    ``beta`` the increment of the basis and ``r`` the shift of the basis.
    """

    alpha: Fraction
    beta: Fraction
    r: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta", "r"):
            object.__setattr__(self, name, exact(getattr(self, name)))

    @classmethod
    def of(cls, alpha, beta, r) -> "ParameterTriple":
        return cls(exact(alpha), exact(beta), exact(r))

    def __iter__(self):
        return iter((self.alpha, self.beta, self.r))

    @property
    def is_degenerate(self) -> bool:
        return self.alpha == 0 and self.beta == 0 and self.r == 0

    def require_nondegenerate(self) -> "ParameterTriple":
        if self.is_degenerate:
            raise DegenerateTripleError("the triple (0, 0, 0) defines no Stirling family")
        return self

    def dual(self) -> "ParameterTriple":
        """The partner ``(beta, alpha, -r)`` whose triangle is the matrix inverse."""
        return ParameterTriple(self.beta, self.alpha, -self.r)

    def __str__(self):
        return f"({self.alpha}, {self.beta}, {self.r})"
