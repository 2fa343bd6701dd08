"""Witt, Virasoro and truncated L1 structure constants.

Basis e_i with [e_i, e_j] = (j - i) e_{i+j}; the Virasoro algebra adds the
central term (j^3 - j)/12 * delta_{-i,j} * z.  L1 is spanned by e_i, i >= 1;
``L1(N)`` is its quotient by the ideal spanned by e_i, i > N.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Tuple

__all__ = [
    "AlgebraKind",
    "BracketResult",
    "OutOfWindow",
    "L1",
    "witt",
    "virasoro",
    "bracket",
    "rescaled_basis",
]


class OutOfWindow(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraKind:
    name: str  # "L1", "witt" or "virasoro"
    lo: int
    hi: int

    def contains(self, i: int) -> bool:
        return self.lo <= i <= self.hi

    def basis(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def central(self) -> bool:
        return self.name == "virasoro"


def L1(N: int) -> AlgebraKind:
    """L1 truncated above N, i.e. L1 / span(e_i : i > N)."""
    if N < 1:
        raise ValueError("truncation order must be positive")
    return AlgebraKind("L1", 1, N)


def witt(lo: int, hi: int) -> AlgebraKind:
    if lo > hi:
        raise ValueError("empty window")
    return AlgebraKind("witt", lo, hi)


def virasoro(lo: int, hi: int) -> AlgebraKind:
    if lo > hi:
        raise ValueError("empty window")
    return AlgebraKind("virasoro", lo, hi)


@dataclass(frozen=True)
class BracketResult:
    terms: Tuple[Tuple[int, Fraction], ...]
    central: Fraction = Fraction(0)

    def coefficient(self, k: int) -> Fraction:
        for idx, c in self.terms:
            if idx == k:
                return c
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.terms and not self.central


def bracket(kind: AlgebraKind, i: int, j: int) -> BracketResult:
    if not (kind.contains(i) and kind.contains(j)):
        raise OutOfWindow(f"index outside {kind}: ({i}, {j})")
    terms: Tuple[Tuple[int, Fraction], ...] = ()
    k = i + j
    if j != i:
        if kind.name == "L1":
            # quotient algebra: anything above N is zero
            if k <= kind.hi:
                terms = ((k, Fraction(j - i)),)
        else:
            if not kind.contains(k):
                raise OutOfWindow(f"bracket [e_{i}, e_{j}] leaves the window {kind}")
            terms = ((k, Fraction(j - i)),)
    central = Fraction(0)
    if kind.central and k == 0:
        central = Fraction(j ** 3 - j, 12)
    return BracketResult(terms, central)


def rescaled_basis(i: int) -> Fraction:
    """Scale s_i with e~_i = s_i e_i, chosen so that [e~_1, e~_i] = e~_{i+1} for i >= 2."""
    if i < 1:
        raise ValueError("rescaled basis is defined for i >= 1")
    if i == 1:
        return Fraction(1)
    return Fraction(6 * factorial(i - 2))
