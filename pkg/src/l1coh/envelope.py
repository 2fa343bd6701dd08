"""PBW arithmetic in universal enveloping algebras of Witt-type algebras.

Monomials are non-increasing index tuples, read left to right as a word:
``(2, 1)`` is e_2 e_1.  Coefficients can be Fractions or ``LaurentPoly``.
A central charge may be supplied, in which case [e_i, e_{-i}] picks up the
Virasoro cocycle times that scalar.

The Benoit-Saint-Aubin operators S_{p,1}(t), S_{1,q}(t) are built from sums
over compositions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

from .exactnum import LaurentPoly, as_rational

__all__ = [
    "PBW",
    "UnsupportedPQ",
    "UEAElement",
    "left_mult",
    "normal_order",
    "multiply",
    "compositions",
    "bsa_coefficient",
    "bsa_coefficient_closed",
    "bsa_operator",
    "bsa_operator_by_compositions",
]

PBW = Tuple[int, ...]


class UnsupportedPQ(ValueError):
    pass


@lru_cache(maxsize=None)
def _left_mult(i: int, mono: PBW, central: Optional[Fraction]) -> Tuple[Tuple[PBW, Fraction], ...]:
    if not mono or i >= mono[0]:
        return (((i,) + mono, Fraction(1)),)
    m0, rest = mono[0], mono[1:]
    out: Dict[PBW, Fraction] = {}
    # e_i e_m0 rest = e_m0 (e_i rest) + [e_i, e_m0] rest
    for mm, c in _left_mult(i, rest, central):
        for m2, c2 in _left_mult(m0, mm, central):
            out[m2] = out.get(m2, 0) + c * c2
    if m0 != i:
        for mm, c in _left_mult(i + m0, rest, central):
            out[mm] = out.get(mm, 0) + (m0 - i) * c
    if central is not None and i + m0 == 0:
        z = central * Fraction(m0 ** 3 - m0, 12)
        if z:
            out[rest] = out.get(rest, 0) + z
    return tuple(sorted((m, c) for m, c in out.items() if c))


def left_mult(i: int, mono: Sequence[int], central=None) -> Dict[PBW, Fraction]:
    """e_i times a normal-ordered monomial, normal-ordered again."""
    mono = tuple(mono)
    if any(a < b for a, b in zip(mono, mono[1:])):
        raise ValueError("monomial is not in normal order")
    c = None if central is None else as_rational(central)
    return dict(_left_mult(i, mono, c))


class UEAElement:
    """Finite combination of PBW monomials."""

    __slots__ = ("_t", "central")

    def __init__(self, terms: Optional[Mapping[Sequence[int], object]] = None, central=None):
        t: Dict[PBW, object] = {}
        for m, v in (terms or {}).items():
            if isinstance(v, int):
                v = Fraction(v)
            if v:
                t[tuple(m)] = v
        for m in t:
            if any(a < b for a, b in zip(m, m[1:])):
                raise ValueError(f"monomial {m} is not in normal order; use normal_order")
        self._t = t
        self.central = None if central is None else as_rational(central)

    @classmethod
    def unit(cls, central=None) -> "UEAElement":
        return cls({(): 1}, central)

    @classmethod
    def gen(cls, i: int, central=None) -> "UEAElement":
        return cls({(i,): 1}, central)

    @property
    def terms(self) -> Dict[PBW, object]:
        return dict(self._t)

    def coeff(self, mono: Sequence[int]):
        return self._t.get(tuple(mono), 0)

    def __iter__(self) -> Iterator[Tuple[PBW, object]]:
        return iter(sorted(self._t.items(), key=lambda kv: (-len(kv[0]), kv[0]), reverse=False))

    def is_zero(self) -> bool:
        return not self._t

    def weights(self):
        return sorted({sum(m) for m in self._t})

    @property
    def weight(self) -> Optional[int]:
        w = self.weights()
        return w[0] if len(w) == 1 else None

    def _ctx(self, other: "UEAElement"):
        if self.central is not None and other.central is not None and self.central != other.central:
            raise ValueError("elements live in envelopes with different central charges")
        return self.central if self.central is not None else other.central

    def __add__(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        t = dict(self._t)
        for m, v in other._t.items():
            t[m] = t[m] + v if m in t else v
        return UEAElement({m: v for m, v in t.items() if v}, self._ctx(other))

    def __neg__(self):
        return UEAElement({m: -v for m, v in self._t.items()}, self.central)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "UEAElement":
        return UEAElement({m: c * v for m, v in self._t.items() if c * v}, self.central)

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def specialize(self, t) -> "UEAElement":
        """Evaluate LaurentPoly coefficients at a rational t."""
        t = as_rational(t)
        return UEAElement(
            {m: (v.evaluate(t) if isinstance(v, LaurentPoly) else v) for m, v in self._t.items()},
            self.central,
        )

    def map_coefficients(self, f) -> "UEAElement":
        return UEAElement({m: f(v) for m, v in self._t.items()}, self.central)

    def __eq__(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(tuple(sorted((m, repr(v)) for m, v in self._t.items())))

    def __repr__(self):
        if not self._t:
            return "0"
        parts = []
        for m, v in sorted(self._t.items(), key=lambda kv: (-kv[0].count(1), kv[0]), reverse=True):
            word = "*".join(f"e{i}" for i in m) if m else "1"
            parts.append(f"({v})*{word}")
        return " + ".join(parts)


def _apply_letter(i: int, x: UEAElement) -> UEAElement:
    out: Dict[PBW, object] = {}
    for m, v in x._t.items():
        for mm, c in _left_mult(i, m, x.central):
            inc = v * c
            out[mm] = out[mm] + inc if mm in out else inc
    return UEAElement({m: v for m, v in out.items() if v}, x.central)


def normal_order(word_terms, central=None) -> UEAElement:
    """Normal-order a combination of arbitrary words.

    ``word_terms`` is an iterable of ``(word, coefficient)`` pairs or a mapping
    word -> coefficient; words are tuples of generator indices in any order.
    """
    items = word_terms.items() if isinstance(word_terms, Mapping) else word_terms
    total = UEAElement({}, central)
    for word, coeff in items:
        x = UEAElement.unit(central)
        for i in reversed(tuple(word)):
            x = _apply_letter(i, x)
        total = total + x.scale(coeff)
    return total


def multiply(a: UEAElement, b: UEAElement) -> UEAElement:
    central = a._ctx(b)
    b = UEAElement(b._t, central)
    total = UEAElement({}, central)
    for m, v in a._t.items():
        x = b
        for i in reversed(m):
            x = _apply_letter(i, x)
        total = total + x.scale(v)
    return total


def compositions(r: int) -> Iterator[Tuple[int, ...]]:
    """All ordered tuples of positive integers summing to r."""
    if r == 0:
        yield ()
        return
    for first in range(1, r + 1):
        for rest in compositions(r - first):
            yield (first,) + rest


def _partial_sums(comp: Sequence[int]) -> list:
    out, acc = [], 0
    for x in comp[:-1]:
        acc += x
        out.append(acc)
    return out


def bsa_coefficient(r: int, comp: Sequence[int]) -> Fraction:
    """Product over 1 <= k < r, k not a partial sum, of k(r-k)."""
    if sum(comp) != r or any(x < 1 for x in comp):
        raise ValueError("not a composition of r")
    sums = set(_partial_sums(comp))
    return Fraction(prod(k * (r - k) for k in range(1, r) if k not in sums))


def bsa_coefficient_closed(r: int, comp: Sequence[int]) -> Fraction:
    """(r-1)!^2 divided by the products of the partial sums and of their complements."""
    if sum(comp) != r or any(x < 1 for x in comp):
        raise ValueError("not a composition of r")
    sums = _partial_sums(comp)
    return Fraction(factorial(r - 1) ** 2, prod(sums) * prod(r - k for k in sums))


@lru_cache(maxsize=None)
def bsa_operator(p: int, q: int) -> UEAElement:
    """S_{p,1}(t) or S_{1,q}(t) with LaurentPoly coefficients, normal-ordered.

    The composition sum is accumulated from the right: with the coefficient
    written as (r-1)!^2 / prod over partial sums b of b(r-b), the tail sums
    X_a over compositions of r - a satisfy X_a = sum_i w(a+i) t^{+-(i-1)} e_i X_{a+i}.
    """
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    if p > 1 and q > 1:
        raise UnsupportedPQ(f"no closed formula for S_{p},{q}; use verma.singular_vector")
    r, sign = (p, 1) if q == 1 else (q, -1)
    tails = {r: UEAElement.unit()}
    for a in range(r - 1, -1, -1):
        acc = UEAElement()
        for i in range(1, r - a + 1):
            b = a + i
            w = Fraction(1) if b == r else Fraction(1, b * (r - b))
            term = _apply_letter(i, tails[b]).scale(LaurentPoly({sign * (i - 1): w}))
            acc = acc + term
        tails[a] = acc
    return tails[0].scale(factorial(r - 1) ** 2)


def bsa_operator_by_compositions(p: int, q: int) -> UEAElement:
    """Direct sum over all compositions (exponential; kept as an oracle for small r)."""
    if p > 1 and q > 1:
        raise UnsupportedPQ(f"no closed formula for S_{p},{q}")
    r, sign = (p, 1) if q == 1 else (q, -1)
    words = []
    for comp in compositions(r):
        coeff = LaurentPoly({sign * (r - len(comp)): bsa_coefficient(r, comp)})
        words.append((comp, coeff))
    return normal_order(words)
