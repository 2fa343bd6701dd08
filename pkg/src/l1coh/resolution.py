"""The rank-two free resolution of the trivial L1-module at central charge 0.

Stage P_k (k >= 1) is free over U(L1) on generators g1, g2 of weights e(-k)
and e(k), e(+-k) = (3k^2 +- k)/2; P_0 is free on one generator of weight 0.
With t = -3/2,

    delta_1 : g1 -> S_{1,1} v,  g2 -> S_{1,2} v
    delta_{k+1} : g1 -> S_{1,3k+1} g1 - S_{2k+1,1} g2
                  g2 -> S_{2k+1,2} g1 - S_{1,3k+2} g2

Applying Hom(-, M) to a thread module and taking weight-s parts gives a
complex of spaces of dimension <= 2, whose cohomology is H^*_s(L1, M).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .cochain import module_cohomology, pentagonal
from .envelope import UEAElement, bsa_operator, multiply
from .exactnum import LinearSolver, SparseMatrix, as_rational
from .threadmod import ThreadSpec, sigma
from .verma import as_operator, singular_vector

__all__ = [
    "T_RES",
    "S_op",
    "gen_weights",
    "ResolutionStage",
    "stage_labels",
    "delta",
    "ExactnessReport",
    "verify_exactness",
    "d_matrix",
    "ThreadCohomologyReport",
    "thread_cohomology",
    "Mismatch",
    "cross_validate",
]

T_RES = Fraction(-3, 2)


class Mismatch(AssertionError):
    pass


def e_pm(k: int, sign: int) -> int:
    return pentagonal(k, sign)


def gen_weights(k: int) -> Tuple[int, ...]:
    """Weights of the generators of P_k."""
    if k == 0:
        return (0,)
    return (e_pm(k, -1), e_pm(k, 1))


@lru_cache(maxsize=None)
def S_op(p: int, q: int, t: Fraction = T_RES) -> UEAElement:
    """S_{p,q}(t) at a fixed t: closed formula when p = 1 or q = 1, else the Verma solver."""
    if p == 1 or q == 1:
        return bsa_operator(p, q).specialize(t)
    return as_operator(singular_vector(p, q, t))


@dataclass
class ResolutionStage:
    """delta_k : P_k -> P_{k-1}; ``matrix[a][b]`` is the U(L1) coefficient of generator b
    of P_{k-1} in the image of generator a of P_k."""

    k: int
    matrix: List[List[Tuple[Tuple[int, int, int], UEAElement]]]

    def entry(self, a: int, b: int) -> UEAElement:
        return self.matrix[a][b][1]

    def labels(self) -> List[List[str]]:
        out = []
        for row in self.matrix:
            out.append([_label(lbl) for lbl, _ in row])
        return out


def _label(lbl: Tuple[int, int, int]) -> str:
    sign, p, q = lbl
    return f"{'-' if sign < 0 else ''}S_{p},{q}"


def _signed(lbl: Tuple[int, int, int], t: Fraction):
    sign, p, q = lbl
    op = S_op(p, q, t)
    return (lbl, op if sign > 0 else -op)


def stage_labels(k: int) -> List[List[Tuple[int, int, int]]]:
    """(sign, p, q) for each entry of delta_k."""
    if k < 1:
        raise ValueError("delta_k is defined for k >= 1")
    if k == 1:
        return [[(1, 1, 1)], [(1, 1, 2)]]
    K = k - 1
    return [
        [(1, 1, 3 * K + 1), (-1, 2 * K + 1, 1)],
        [(1, 2 * K + 1, 2), (-1, 1, 3 * K + 2)],
    ]


def delta(k: int, t=T_RES) -> ResolutionStage:
    t = as_rational(t)
    return ResolutionStage(k, [[_signed(lbl, t) for lbl in row] for row in stage_labels(k)])


@dataclass
class ExactnessReport:
    k: int
    ok: bool
    residuals: List[UEAElement]

    def __bool__(self):
        return self.ok


def compose(upper: ResolutionStage, lower: ResolutionStage) -> List[List[UEAElement]]:
    """delta_{k} o delta_{k+1} as a matrix of U(L1) elements."""
    rows = len(upper.matrix)
    cols = len(lower.matrix[0])
    out = []
    for a in range(rows):
        row = []
        for c in range(cols):
            acc = UEAElement()
            for b in range(len(lower.matrix)):
                acc = acc + multiply(upper.entry(a, b), lower.entry(b, c))
            row.append(acc)
        out.append(row)
    return out


def verify_exactness(k: int, t=T_RES) -> ExactnessReport:
    """delta_k o delta_{k+1} = 0 componentwise, by PBW multiplication."""
    comp = compose(delta(k + 1, t), delta(k, t))
    res = [x for row in comp for x in row]
    return ExactnessReport(k, all(x.is_zero() for x in res), res)


# ---------------------------------------------------------------------------
# The small complex computing thread-module cohomology
# ---------------------------------------------------------------------------


def _sigma_at(spec, p: int, q: int, j: int) -> Fraction:
    if not (spec.contains(j) and spec.contains(j + p * q)):
        return Fraction(0)
    return sigma(spec, S_op(p, q), j)


def d_matrix(spec: ThreadSpec, s: int, k: int) -> List[List[Fraction]]:
    """D_k : C^k_s -> C^{k+1}_s as a matrix (rows: generators of P_{k+1}).

    A cochain on P_k is a pair (m1, m2) with m1 in M_{s+e(-k)}, m2 in M_{s+e(k)}
    (just m in M_s for k = 0); entries are sigma values at the source index.
    """
    src = [s + w for w in gen_weights(k)]
    out = []
    for row in stage_labels(k + 1):
        line = []
        for b, (sign, p, q) in enumerate(row):
            line.append(sign * _sigma_at(spec, p, q, src[b]))
        out.append(line)
    return out


@dataclass
class ThreadCohomologyReport:
    spec: object
    s: int
    dims: Dict[int, int]
    chain_dims: Dict[int, int]
    ranks: Dict[int, int]
    matrices: Dict[int, List[List[Fraction]]] = field(repr=False, default_factory=dict)


def _present(spec, s: int, k: int) -> List[int]:
    return [b for b, w in enumerate(gen_weights(k)) if spec.contains(s + w)]


def thread_cohomology(spec, s: int, k_max: int = 4) -> ThreadCohomologyReport:
    """dim H^k_s(L1, M) for k = 0..k_max from the sigma complex."""
    present = {k: _present(spec, s, k) for k in range(k_max + 2)}
    ranks: Dict[int, int] = {-1: 0}
    mats = {}
    for k in range(k_max + 1):
        full = d_matrix(spec, s, k)
        mats[k] = full
        rows, cols = present[k + 1], present[k]
        m = SparseMatrix.from_dense([[full[r][c] for c in cols] for r in rows], ncols=len(cols))
        ranks[k] = LinearSolver(m).rank if rows and cols else 0
    dims = {k: len(present[k]) - ranks[k] - ranks[k - 1] for k in range(k_max + 1)}
    return ThreadCohomologyReport(spec, s, dims, {k: len(present[k]) for k in range(k_max + 1)}, ranks, mats)


def cross_validate(spec, s: int, degrees: Sequence[int]) -> Dict[int, Tuple[int, int]]:
    """Compare resolution and Chevalley-Eilenberg dimensions; raises Mismatch."""
    k_max = max(degrees)
    res = thread_cohomology(spec, s, k_max)
    table = {}
    for q in degrees:
        ce = module_cohomology(spec, q, s).dimension
        table[q] = (res.dims[q], ce)
    bad = {q: v for q, v in table.items() if v[0] != v[1]}
    if bad:
        raise Mismatch(f"resolution vs cochains at s={s}: {bad}")
    return table
