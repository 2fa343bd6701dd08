"""Thread L1-modules: A_alpha, tensor densities F_{lambda,mu}, the glued module M~.

A thread module has one basis vector f_j per index and e_i f_j = a_i(j) f_{i+j}.
``ThreadSpec.act(i, j)`` returns a_i(j).  Bounds turn an infinite module into
the subquotient spanned by f_lo, ..., f_hi (targets outside are zero).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Mapping, Optional, Tuple

from .cochain import Cochain, e as e_form
from .envelope import UEAElement
from .exactnum import LaurentPoly, ParamPoly, as_rational
from .liealg import rescaled_basis

__all__ = [
    "ThreadSpec",
    "A",
    "F",
    "Mtilde",
    "MtildeNonzero",
    "CustomB",
    "NotThread",
    "Inconsistent",
    "apply_uea",
    "sigma",
    "f_poly",
    "normalized_b",
    "uniqueness_solve",
    "relation_residuals",
    "connection_of",
]


class NotThread(ValueError):
    pass


class Inconsistent(ValueError):
    pass


VARIANTS = ("A", "F", "Mtilde", "MtildeNonzero", "CustomB")


@dataclass(frozen=True)
class ThreadSpec:
    variant: str
    params: Tuple = ()
    lo: Optional[int] = None
    hi: Optional[int] = None
    b: Tuple[Tuple[int, Fraction], ...] = field(default=(), compare=True)

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown thread variant {self.variant!r}")
        if (self.lo is None) != (self.hi is None):
            raise ValueError("give both bounds or neither")
        if self.lo is not None and self.lo > self.hi:
            raise ValueError("empty subquotient")

    # construction helpers -------------------------------------------------
    def bounded(self, lo: int, hi: int) -> "ThreadSpec":
        return ThreadSpec(self.variant, self.params, lo, hi, self.b)

    @property
    def finite(self) -> bool:
        return self.lo is not None

    def contains(self, j: int) -> bool:
        if self.variant == "MtildeNonzero" and j == 0:
            return False
        if self.lo is None:
            return True
        return self.lo <= j <= self.hi

    @property
    def indices(self) -> Tuple[int, ...]:
        if not self.finite:
            raise ValueError("infinite thread module has no finite index list")
        return tuple(j for j in range(self.lo, self.hi + 1) if self.contains(j))

    # the action -----------------------------------------------------------
    def raw_act(self, i: int, j: int) -> Fraction:
        """Coefficient before subquotient clamping."""
        v = self.variant
        if v == "A":
            (alpha,) = self.params
            return Fraction(1) if i == 1 else (Fraction(alpha) if i == 2 else Fraction(0))
        if v == "F":
            lam, mu = self.params
            return Fraction(j) + Fraction(mu) - Fraction(lam) * (i + 1)
        if v in ("Mtilde", "MtildeNonzero"):
            if j >= 0:
                return Fraction(j)
            if i + j <= 0:
                return Fraction(i + j)
            return Fraction(1)
        # CustomB: e~_1, e~_2 prescribed, e~_{i+1} = [e~_1, e~_i]
        return _custom_c(self.b, i, j) / rescaled_basis(i)

    def act(self, i: int, j: int) -> Fraction:
        if i < 1:
            raise ValueError("L1 acts through e_i with i >= 1")
        if not (self.contains(j) and self.contains(i + j)):
            return Fraction(0)
        return self.raw_act(i, j)


def A(alpha, lo=None, hi=None) -> ThreadSpec:
    return ThreadSpec("A", (as_rational(alpha),), lo, hi)


def F(lam, mu, lo=None, hi=None) -> ThreadSpec:
    return ThreadSpec("F", (as_rational(lam), as_rational(mu)), lo, hi)


def Mtilde(lo=None, hi=None) -> ThreadSpec:
    return ThreadSpec("Mtilde", (), lo, hi)


def MtildeNonzero(lo=None, hi=None) -> ThreadSpec:
    return ThreadSpec("MtildeNonzero", (), lo, hi)


def CustomB(b: Mapping[int, object], lo: int, hi: int) -> ThreadSpec:
    """e~_1 f_j = f_{j+1} (zero for j = -1, 0), e~_2 f_j = b_j f_{j+2}."""
    return ThreadSpec("CustomB", (), lo, hi, tuple(sorted((int(k), as_rational(v)) for k, v in b.items())))


def _c1(j: int) -> Fraction:
    return Fraction(0) if j in (-1, 0) else Fraction(1)


@lru_cache(maxsize=None)
def _custom_c(b: Tuple[Tuple[int, Fraction], ...], i: int, j: int) -> Fraction:
    if i == 1:
        return _c1(j)
    if i == 2:
        return dict(b).get(j, Fraction(0))
    # e~_i = [e~_1, e~_{i-1}]
    return _c1(j + i - 1) * _custom_c(b, i - 1, j) - _custom_c(b, i - 1, j + 1) * _c1(j)


# ---------------------------------------------------------------------------
# Enveloping-algebra action
# ---------------------------------------------------------------------------


def apply_uea(spec: ThreadSpec, S: UEAElement, j: int) -> Dict[int, object]:
    """S f_j as ``{index: coefficient}``; words act right to left."""
    out: Dict[int, object] = {}
    for mono, coeff in S.terms.items():
        if not spec.contains(j):
            continue
        val = Fraction(1)
        idx = j
        for i in reversed(mono):
            val *= spec.act(i, idx)
            idx += i
            if not val:
                break
        if val:
            inc = coeff * val
            out[idx] = out[idx] + inc if idx in out else inc
    return {k: v for k, v in out.items() if v}


def sigma(spec: ThreadSpec, S: UEAElement, j: int):
    """The scalar sigma with S f_j = sigma f_{j + weight(S)}."""
    res = apply_uea(spec, S, j)
    w = S.weight
    if w is None and not S.is_zero():
        raise NotThread("operator is not weight-homogeneous")
    extra = [k for k in res if k != (j + (w or 0))]
    if extra:
        raise NotThread(f"S f_{j} has support {sorted(res)}")
    if not res:
        return Fraction(0) if not any(isinstance(v, LaurentPoly) for v in S.terms.values()) else LaurentPoly()
    return res[j + w]


def f_poly(j: int, p: int) -> LaurentPoly:
    """(p-1)!^2 prod_{i=1}^{p-1} (t + (i+j)/(i(p-i)))."""
    if p < 2:
        raise ValueError("p >= 2 required")
    out = LaurentPoly.const(factorial(p - 1) ** 2)
    for i in range(1, p):
        out = out * LaurentPoly({1: 1, 0: Fraction(i + j, i * (p - i))})
    return out


# ---------------------------------------------------------------------------
# The uniqueness recurrence
# ---------------------------------------------------------------------------


def _c_poly(b: Mapping[int, object], i: int, j: int):
    if i == 1:
        return _c1(j)
    if i == 2:
        return b.get(j, 0)
    return _c1(j + i - 1) * _c_poly(b, i - 1, j) - _c_poly(b, i - 1, j + 1) * _c1(j)


def _r5(b, i):
    return _c_poly(b, 3, i) * b.get(i + 3, 0) - b.get(i, 0) * _c_poly(b, 3, i + 2) - _c_poly(b, 5, i)


def _r7(b, i):
    return _c_poly(b, 5, i) * b.get(i + 5, 0) - b.get(i, 0) * _c_poly(b, 5, i + 2) - Fraction(9, 10) * _c_poly(b, 7, i)


def relation_residuals(b: Mapping[int, object], m: int, n: int) -> Dict[str, object]:
    """Values of R5_i (i = m..n-5) and R7_i (i = m..n-7) for e~_2-coefficients b."""
    out = {}
    for i in range(m, n - 4):
        out[f"R5_{i}"] = _r5(b, i)
    for i in range(m, n - 6):
        out[f"R7_{i}"] = _r7(b, i)
    return out


def uniqueness_solve(m: int, n: int) -> Dict[int, Fraction]:
    """Solve the R5/R7 system for b_j, j = m..n-2, with b_{-2}=0, b_{-1}=b_0=1.

    Unknowns are fixed one at a time, outward from the normalized centre, each
    from the relations whose index window it completes.
    """
    if n - m + 1 < 11:
        raise ValueError("need n - m + 1 >= 11")
    if not (m <= -3 and n >= 5):
        raise ValueError("range must extend past the normalized indices")
    b: Dict[int, object] = {-2: Fraction(0), -1: Fraction(1), 0: Fraction(1)}
    order: List[int] = []
    right, left = 1, -3
    while right <= n - 2 or left >= m:
        if right <= n - 2:
            order.append(right)
            right += 1
        if left >= m and right > 3:
            order.append(left)
            left -= 1
    x = ParamPoly.var("x")
    for k in order:
        trial = dict(b)
        trial[k] = x
        known = set(trial)
        eqs = []
        for name, (lo_off, hi_off, fn) in {"R5": (0, 3, _r5), "R7": (0, 5, _r7)}.items():
            for i in range(m, n - (4 if name == "R5" else 6)):
                window = set(range(i + lo_off, i + hi_off + 1)) & set(range(m, n - 1))
                if k in window and window <= known:
                    eqs.append((f"{name}_{i}", fn(trial, i)))
        value = None
        for name, poly in eqs:
            poly = poly if isinstance(poly, ParamPoly) else ParamPoly.const(poly)
            if poly.total_degree() > 1:
                raise Inconsistent(f"{name} is not linear in b_{k}")
            lin = poly.linear_part().get("x", 0)
            if lin:
                value = -poly.constant_term() / lin
                break
        if value is None:
            raise Inconsistent(f"no relation determines b_{k}")
        b[k] = value
        for name, poly in eqs:
            val = poly.evaluate({"x": value}) if isinstance(poly, ParamPoly) else poly
            if val:
                raise Inconsistent(f"{name} fails after fixing b_{k} = {value}")
    for name, val in relation_residuals(b, m, n).items():
        if val:
            raise Inconsistent(f"{name} = {val} on the solved sequence")
    return {j: Fraction(b[j]) for j in sorted(b)}


def normalized_b(spec: ThreadSpec) -> Dict[int, Fraction]:
    """e~_2-coefficients of a finite module after rescaling so that e~_1 f_j = f_{j+1} off {-1, 0}
    and e~_2 f_{-1} = f_1."""
    idx = spec.indices
    lam: Dict[int, Fraction] = {idx[0]: Fraction(1)}
    e2 = lambda j: spec.act(2, j) * rescaled_basis(2)
    for j in idx[1:]:
        if j - 1 in lam and spec.act(1, j - 1):
            lam[j] = lam[j - 1] * spec.act(1, j - 1)
        elif j - 2 in lam and e2(j - 2):
            # bridge across the gap
            lam[j] = lam[j - 2] * e2(j - 2)
        else:
            lam[j] = Fraction(1)
    out = {}
    for j in idx:
        if j + 2 in lam:
            out[j] = e2(j) * lam[j] / lam[j + 2]
    return out


# ---------------------------------------------------------------------------
# Formal connection of a finite thread module
# ---------------------------------------------------------------------------


def connection_of(spec: ThreadSpec) -> List[List[Cochain]]:
    """Lower-triangular matrix of 1-forms: entry (r, c) = sum_i a_i(j_c) e^i with j_r = j_c + i.

    Rows and columns follow the index order, so dA = A ^ A exactly.
    """
    idx = spec.indices
    N = len(idx)
    A_: List[List[Cochain]] = [[Cochain.zero(1) for _ in range(N)] for _ in range(N)]
    for c, jc in enumerate(idx):
        for r in range(c + 1, N):
            i = idx[r] - jc
            coeff = spec.act(i, jc)
            if coeff:
                A_[r][c] = e_form(i, coeff=coeff)
    return A_
