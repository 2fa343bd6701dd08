"""Virasoro Verma modules and their singular vectors.

V(h, c) is free over U(L1) on a vector v with e_0 v = h v, z v = c v and
e_k v = 0 for k < 0, so vectors are combinations of PBW monomials in
positive generators applied to v.  Singular vectors at level pq are found
as the kernel of e_{-1} and e_{-2}, which generate the negative part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .envelope import PBW, UEAElement, left_mult
from .exactnum import LinearSolver, SparseMatrix, as_rational

__all__ = [
    "NotUnique",
    "VermaParams",
    "central_charge",
    "conformal_weight",
    "VermaVector",
    "act",
    "partitions",
    "singular_vector",
    "as_operator",
]


class NotUnique(ValueError):
    def __init__(self, msg: str, dimension: int):
        super().__init__(msg)
        self.dimension = dimension


def central_charge(t) -> Fraction:
    t = as_rational(t)
    return 13 + 6 * t + 6 / t


def conformal_weight(p: int, q: int, t) -> Fraction:
    t = as_rational(t)
    return -Fraction(p * p - 1, 4) * t - Fraction(p * q - 1, 2) - Fraction(q * q - 1, 4) / t


@dataclass(frozen=True)
class VermaParams:
    h: Fraction
    c: Fraction
    p: Optional[int] = None
    q: Optional[int] = None
    t: Optional[Fraction] = None

    @classmethod
    def from_pq(cls, p: int, q: int, t) -> "VermaParams":
        t = as_rational(t)
        if not t:
            raise ValueError("t must be nonzero")
        return cls(conformal_weight(p, q, t), central_charge(t), p, q, t)


@lru_cache(maxsize=None)
def partitions(n: int, largest: Optional[int] = None) -> Tuple[PBW, ...]:
    """Non-increasing tuples of positive integers with sum n, reverse-lex order."""
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _act_mono(k: int, mono: PBW, h: Fraction, c: Fraction) -> Tuple[Tuple[PBW, Fraction], ...]:
    if k >= 1:
        return tuple(left_mult(k, mono).items())
    if not mono:
        return (((), h),) if k == 0 else ()
    m0, rest = mono[0], mono[1:]
    out: Dict[PBW, Fraction] = {}
    # e_k e_m0 rest v = e_m0 (e_k rest v) + [e_k, e_m0] rest v
    for mm, a in _act_mono(k, rest, h, c):
        for m2, b in left_mult(m0, mm).items():
            out[m2] = out.get(m2, 0) + a * b
    if m0 != k:
        for mm, a in _act_mono(k + m0, rest, h, c):
            out[mm] = out.get(mm, 0) + (m0 - k) * a
    if k + m0 == 0:
        z = c * Fraction(m0 ** 3 - m0, 12)
        if z:
            out[rest] = out.get(rest, 0) + z
    return tuple(sorted((m, a) for m, a in out.items() if a))


class VermaVector:
    """Element of V(h, c): ``{monomial: coefficient}`` meaning sum coefficient * e_mono v."""

    __slots__ = ("_t", "params")

    def __init__(self, terms: Mapping[Sequence[int], object], params: VermaParams):
        self._t = {tuple(m): as_rational(v) for m, v in terms.items() if v}
        self.params = params

    @classmethod
    def highest(cls, params: VermaParams) -> "VermaVector":
        return cls({(): 1}, params)

    @property
    def terms(self) -> Dict[PBW, Fraction]:
        return dict(self._t)

    def coeff(self, mono) -> Fraction:
        return self._t.get(tuple(mono), Fraction(0))

    @property
    def level(self) -> Optional[int]:
        levels = {sum(m) for m in self._t}
        return levels.pop() if len(levels) == 1 else None

    def is_zero(self) -> bool:
        return not self._t

    def __add__(self, other: "VermaVector") -> "VermaVector":
        t = dict(self._t)
        for m, v in other._t.items():
            t[m] = t.get(m, 0) + v
        return VermaVector(t, self.params)

    def scale(self, a) -> "VermaVector":
        return VermaVector({m: a * v for m, v in self._t.items()}, self.params)

    def __eq__(self, other):
        if not isinstance(other, VermaVector):
            return NotImplemented
        return self._t == other._t and self.params == other.params

    def __repr__(self):
        if not self._t:
            return "0"
        return " + ".join(
            f"({v})*" + ("*".join(f"e{i}" for i in m) if m else "") + "v" for m, v in sorted(self._t.items())
        )


def act(k: int, vec: VermaVector, params: Optional[VermaParams] = None) -> VermaVector:
    """e_k applied to a Verma vector (k any integer)."""
    params = params or vec.params
    out: Dict[PBW, Fraction] = {}
    for m, v in vec.terms.items():
        for mm, a in _act_mono(k, m, params.h, params.c):
            out[mm] = out.get(mm, 0) + v * a
    return VermaVector(out, params)


def act_central(vec: VermaVector) -> VermaVector:
    return vec.scale(vec.params.c)


def singular_vector(p: int, q: int, t) -> VermaVector:
    """The singular vector w_{p,q}(t) at level pq, normalized so the e_1^pq coefficient is 1."""
    params = VermaParams.from_pq(p, q, t)
    n = p * q
    basis = partitions(n)
    rows: Dict[Tuple[int, PBW], int] = {}
    entries: Dict[Tuple[int, int], Fraction] = {}
    for col, mono in enumerate(basis):
        for k in (-1, -2):
            for mm, a in _act_mono(k, mono, params.h, params.c):
                r = rows.setdefault((k, mm), len(rows))
                entries[(r, col)] = entries.get((r, col), 0) + a
    ker = LinearSolver(SparseMatrix(len(rows), len(basis), entries)).kernel()
    if len(ker) != 1:
        raise NotUnique(f"singular space at level {n} has dimension {len(ker)} for (p,q,t)=({p},{q},{t})", len(ker))
    vec = ker[0]
    lead = vec[basis.index((1,) * n)]
    if not lead:
        raise NotUnique("singular vector has no e_1^pq term", 1)
    return VermaVector({m: x / lead for m, x in zip(basis, vec) if x}, params)


def as_operator(w: VermaVector) -> UEAElement:
    """Strip v: the element S of U(L1) with w = S v."""
    return UEAElement(w.terms)
