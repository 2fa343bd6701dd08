"""Chevalley-Eilenberg cochains of L1, bigraded by degree and weight.

An exterior monomial e^{i_1} ^ ... ^ e^{i_q} is a strictly increasing tuple of
positive indices; its weight is the sum of the indices.  The differential on
trivial coefficients is the transpose of the bracket,

    d e^k = sum_{i < j, i + j = k} (j - i) e^i ^ e^j,

extended as a graded derivation.  With coefficients in a graded thread module
it is

    d(f_j (x) w) = - sum_i (e_i f_j) (x) e^i ^ w + f_j (x) dw,

the sign of the action term being the one that makes d^2 = 0 together with
the bracket term above.

Cochain coefficients may be Fractions or ``ParamPoly`` values; everything
here is linear in the coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Protocol, Sequence, Tuple

from .exactnum import LinearSolver, SparseMatrix, _axpy
from .liealg import AlgebraKind

__all__ = [
    "Mono",
    "monomials",
    "wedge_monomials",
    "Cochain",
    "e",
    "differential_matrix",
    "CohomologyReport",
    "cohomology",
    "class_of",
    "NotClosed",
    "WindowTooSmall",
    "pentagonal",
    "ThreadLike",
    "TrivialModule",
    "ModuleCochain",
    "module_basis",
    "module_differential_matrix",
    "ModuleCohomologyReport",
    "module_cohomology",
    "FlagViolation",
    "SpectralSequence",
    "spectral_sequence",
]

Mono = Tuple[int, ...]


class NotClosed(ValueError):
    pass


class WindowTooSmall(ValueError):
    pass


class FlagViolation(ValueError):
    pass


def pentagonal(q: int, sign: int) -> int:
    """Euler pentagonal number (3q^2 + sign*q)/2."""
    return (3 * q * q + sign * q) // 2


# ---------------------------------------------------------------------------
# Exterior monomials
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def monomials(q: int, mu: int, lo: int = 1) -> Tuple[Mono, ...]:
    """Strictly increasing q-tuples of integers >= lo with sum mu, in lex order."""
    if q == 0:
        return ((),) if mu == 0 else ()
    out: List[Mono] = []
    # smallest remaining q-1 entries after choosing a are a+1, ..., a+q-1
    a = lo
    while q * a + q * (q - 1) // 2 <= mu:
        for rest in monomials(q - 1, mu - a, a + 1):
            out.append((a,) + rest)
        a += 1
    return tuple(out)


def wedge_monomials(a: Mono, b: Mono) -> Optional[Tuple[int, Mono]]:
    """(sign, sorted monomial) for a ^ b, or None when an index repeats."""
    if set(a) & set(b):
        return None
    merged = list(a) + list(b)
    # count inversions between the two sorted blocks
    inv = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inv += j
    sign = -1 if inv % 2 else 1
    return sign, tuple(sorted(merged))


@lru_cache(maxsize=None)
def _d_generator(k: int) -> Tuple[Tuple[Mono, int], ...]:
    return tuple(((i, k - i), k - 2 * i) for i in range(1, (k + 1) // 2) if 2 * i != k)


@lru_cache(maxsize=None)
def _d_mono(m: Mono) -> Tuple[Tuple[Mono, int], ...]:
    out: Dict[Mono, int] = {}
    for pos, k in enumerate(m):
        before = m[:pos]
        after = m[pos + 1:]
        outer = -1 if pos % 2 else 1
        for pair, c in _d_generator(k):
            if set(pair) & set(before) or set(pair) & set(after):
                continue
            w1 = wedge_monomials(before, pair)
            if w1 is None:
                continue
            w2 = wedge_monomials(w1[1], after)
            if w2 is None:
                continue
            coef = outer * w1[0] * w2[0] * c
            out[w2[1]] = out.get(w2[1], 0) + coef
    return tuple((mm, c) for mm, c in sorted(out.items()) if c)


# ---------------------------------------------------------------------------
# Cochains with trivial coefficients
# ---------------------------------------------------------------------------


def _clean(terms: Mapping) -> Dict:
    return {k: v for k, v in terms.items() if v}


class Cochain:
    """Element of the exterior algebra on the dual of L1.

    Mixed degrees are not allowed; mixed weights are.
    """

    __slots__ = ("_t", "_deg")

    def __init__(self, terms: Optional[Mapping[Mono, object]] = None, degree: Optional[int] = None):
        t = {}
        if terms:
            for m, v in terms.items():
                if v:
                    t[tuple(m)] = v if not isinstance(v, int) else Fraction(v)
        degs = {len(m) for m in t}
        if len(degs) > 1:
            raise ValueError("cochain is not degree-homogeneous")
        if degs:
            d = degs.pop()
            if degree is not None and degree != d:
                raise ValueError("declared degree does not match monomials")
            degree = d
        self._t = t
        self._deg = degree

    @classmethod
    def zero(cls, degree: Optional[int] = None) -> "Cochain":
        return cls({}, degree)

    @property
    def terms(self) -> Dict[Mono, object]:
        return dict(self._t)

    @property
    def degree(self) -> Optional[int]:
        return self._deg

    def weights(self) -> List[int]:
        return sorted({sum(m) for m in self._t})

    @property
    def weight(self) -> Optional[int]:
        """The weight if homogeneous, else None (zero cochains have no weight)."""
        w = self.weights()
        return w[0] if len(w) == 1 else None

    def weight_component(self, w: int) -> "Cochain":
        return Cochain({m: v for m, v in self._t.items() if sum(m) == w}, self._deg)

    def coeff(self, m: Mono):
        return self._t.get(tuple(m), 0)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __iter__(self):
        return iter(sorted(self._t.items()))

    def _deg_join(self, other: "Cochain") -> Optional[int]:
        if self._deg is not None and other._deg is not None and self._deg != other._deg:
            if self._t and other._t:
                raise ValueError("adding cochains of different degrees")
            return self._deg if self._t else other._deg
        return self._deg if self._deg is not None else other._deg

    def __add__(self, other: "Cochain") -> "Cochain":
        if not isinstance(other, Cochain):
            return NotImplemented
        deg = self._deg_join(other)
        t = dict(self._t)
        for m, v in other._t.items():
            t[m] = t[m] + v if m in t else v
        return Cochain(_clean(t), deg)

    def __neg__(self) -> "Cochain":
        return Cochain({m: -v for m, v in self._t.items()}, self._deg)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, c) -> "Cochain":
        if not c:
            return Cochain.zero(self._deg)
        return Cochain(_clean({m: c * v for m, v in self._t.items()}), self._deg)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def wedge(self, other: "Cochain") -> "Cochain":
        deg = None
        if self._deg is not None and other._deg is not None:
            deg = self._deg + other._deg
        t: Dict[Mono, object] = {}
        for m1, v1 in self._t.items():
            for m2, v2 in other._t.items():
                w = wedge_monomials(m1, m2)
                if w is None:
                    continue
                s, m = w
                prod = v1 * v2
                prod = prod if s > 0 else -prod
                t[m] = t[m] + prod if m in t else prod
        return Cochain(_clean(t), deg)

    def __xor__(self, other: "Cochain") -> "Cochain":
        return self.wedge(other)

    def bar(self) -> "Cochain":
        """The involution a -> (-1)^(k+1) a on degree-k forms."""
        if self._deg is None or self._deg % 2 == 1:
            return self
        return -self

    def d(self) -> "Cochain":
        deg = None if self._deg is None else self._deg + 1
        t: Dict[Mono, object] = {}
        for m, v in self._t.items():
            for mm, c in _d_mono(m):
                inc = v * c
                t[mm] = t[mm] + inc if mm in t else inc
        return Cochain(_clean(t), deg)

    def map_coefficients(self, f: Callable) -> "Cochain":
        return Cochain(_clean({m: f(v) for m, v in self._t.items()}), self._deg)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._t
        if not isinstance(other, Cochain):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(tuple(sorted((m, str(v)) for m, v in self._t.items())))

    def __repr__(self):
        if not self._t:
            return "0"
        parts = []
        for m, v in sorted(self._t.items()):
            name = "^".join(f"e{i}" for i in m) if m else "1"
            parts.append(f"({v})*{name}")
        return " + ".join(parts)


def e(*indices: int, coeff=1) -> Cochain:
    """e(1, 4) is e^1 ^ e^4 (indices are sorted with the matching sign)."""
    if len(set(indices)) != len(indices):
        return Cochain.zero(len(indices))
    if any(i < 1 for i in indices):
        raise ValueError("L1 has only positive indices")
    # sign of the permutation sorting the indices
    perm = list(indices)
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return Cochain({tuple(sorted(indices)): Fraction(coeff) * sign}, len(indices))


def vector_of(c: Cochain, basis: Sequence[Mono]) -> list:
    index = {m: i for i, m in enumerate(basis)}
    out: list = [0] * len(basis)
    for m, v in c._t.items():
        if m not in index:
            raise ValueError(f"monomial {m} outside the block")
        out[index[m]] = v
    return out


def cochain_of(vec: Sequence, basis: Sequence[Mono], degree: int) -> Cochain:
    return Cochain({basis[i]: v for i, v in enumerate(vec) if v}, degree)


@lru_cache(maxsize=None)
def differential_matrix(q: int, mu: int) -> SparseMatrix:
    """Matrix of d: C^q_mu -> C^{q+1}_mu in the lex monomial bases."""
    src = monomials(q, mu)
    tgt = monomials(q + 1, mu)
    row = {m: i for i, m in enumerate(tgt)}
    entries = {}
    for j, m in enumerate(src):
        for mm, c in _d_mono(m):
            entries[(row[mm], j)] = c
    return SparseMatrix(len(tgt), len(src), entries)


# ---------------------------------------------------------------------------
# Cohomology of a (q, mu) block
# ---------------------------------------------------------------------------


def _reduce_against(vec: Dict[int, Fraction], basis: Dict[int, Dict[int, Fraction]]) -> Dict[int, Fraction]:
    for p in [c for c in vec if c in basis]:
        f = vec.get(p)
        if f:
            vec = _axpy(vec, f, basis[p])
    return vec


def _echelon(vectors: Iterable[Dict[int, Fraction]], key: Callable[[int], int]) -> Dict[int, Dict[int, Fraction]]:
    """Fully reduced echelon basis; the pivot of a vector is its key-minimal index."""
    basis: Dict[int, Dict[int, Fraction]] = {}
    for v in vectors:
        v = _reduce_against(dict(v), basis)
        if not v:
            continue
        pc = min(v, key=key)
        inv = 1 / v[pc]
        v = {j: x * inv for j, x in v.items()}
        for q, bv in list(basis.items()):
            f = bv.get(pc)
            if f:
                basis[q] = _axpy(bv, f, v)
        basis[pc] = v
    return basis


@dataclass
class CohomologyReport:
    q: int
    mu: int
    dimension: int
    representatives: List[Cochain]
    coboundary_dim: int
    cocycle_dim: int
    _solver: Optional[LinearSolver] = field(default=None, repr=False, compare=False)

    def describe(self) -> str:
        reps = ", ".join(repr(r) for r in self.representatives) or "-"
        return f"H^{self.q}_{self.mu}: dim {self.dimension}; reps {reps}"


def _block_cohomology(basis: Sequence, d_in: SparseMatrix, d_out: SparseMatrix):
    """Kernel of d_out modulo image of d_in, with deterministic representatives."""
    n = len(basis)
    kernel = LinearSolver(d_out).kernel() if n else []
    image_cols: List[Dict[int, Fraction]] = [{} for _ in range(d_in.ncols)]
    for i, j, v in d_in.entries():
        image_cols[j][i] = v
    # image pivots on the last coordinate, so representatives favour early monomials
    img = _echelon([c for c in image_cols if c], key=lambda j: -j)
    residues = []
    for k in kernel:
        v = {j: x for j, x in enumerate(k) if x}
        residues.append(_reduce_against(v, img))
    reps = _echelon([r for r in residues if r], key=lambda j: j)
    rep_vecs = [reps[p] for p in sorted(reps)]
    return kernel, list(img.values()), rep_vecs


def _class_solver(rep_vecs, img_vecs, n: int) -> LinearSolver:
    cols = list(rep_vecs) + list(img_vecs)
    entries = {(i, j): v for j, c in enumerate(cols) for i, v in c.items()}
    return LinearSolver(SparseMatrix(n, len(cols), entries))


@lru_cache(maxsize=None)
def _cohomology_cached(q: int, mu: int) -> CohomologyReport:
    basis = monomials(q, mu)
    d_out = differential_matrix(q, mu)
    d_in = differential_matrix(q - 1, mu) if q >= 1 else SparseMatrix(len(basis), 0)
    kernel, img, reps = _block_cohomology(basis, d_in, d_out)
    cochains = [cochain_of([r.get(i, 0) for i in range(len(basis))], basis, q) for r in reps]
    return CohomologyReport(
        q=q,
        mu=mu,
        dimension=len(reps),
        representatives=cochains,
        coboundary_dim=len(img),
        cocycle_dim=len(kernel),
        _solver=_class_solver(reps, img, len(basis)),
    )


def cohomology(q: int, mu: int, algebra: Optional[AlgebraKind] = None) -> CohomologyReport:
    """H^q_mu(L1) by exact linear algebra on the (q, mu) block.

    ``algebra`` may name a truncation L1(N); weight-mu cochains only see
    e^1..e^mu, so N >= mu is required.
    """
    if q < 0:
        raise ValueError("negative degree")
    if algebra is not None:
        if algebra.name != "L1":
            raise ValueError("trivial-coefficient cohomology is computed for L1 truncations")
        if algebra.hi < mu:
            raise WindowTooSmall(f"L1({algebra.hi}) cannot resolve weight {mu}")
    return _cohomology_cached(q, mu)


def class_of(c: Cochain, report: CohomologyReport) -> list:
    """Coordinates of [c] in the report's representative basis.

    Works for Fraction or ParamPoly coefficients; closedness is checked exactly.
    """
    if c.is_zero():
        return [Fraction(0)] * report.dimension
    if c.degree != report.q or any(w != report.mu for w in c.weights()):
        raise ValueError("cochain does not live in the report's (q, mu) block")
    dc = c.d()
    if not dc.is_zero():
        raise NotClosed(f"d({c!r}) = {dc!r}")
    basis = monomials(report.q, report.mu)
    vec = vector_of(c, basis)
    x = report._solver.particular(vec)
    return x[: report.dimension]


# ---------------------------------------------------------------------------
# Module coefficients
# ---------------------------------------------------------------------------


class ThreadLike(Protocol):
    """A finite graded thread module: basis f_j for j in ``indices``."""

    indices: Sequence[int]

    def act(self, i: int, j: int) -> Fraction:  # coefficient of f_{i+j} in e_i f_j
        ...


class TrivialModule:
    """The one-dimensional trivial module, concentrated in index 0."""

    indices = (0,)

    def contains(self, j: int) -> bool:
        return j == 0

    def act(self, i: int, j: int) -> Fraction:
        return Fraction(0)


ModMono = Tuple[int, Mono]


def module_basis(module: ThreadLike, q: int, s: int) -> Tuple[ModMono, ...]:
    """Basis f_j (x) e^I of the weight-s block: |I| = j - s."""
    out = []
    for j in sorted(module.indices):
        w = j - s
        if w < q * (q + 1) // 2:
            continue
        for m in monomials(q, w):
            out.append((j, m))
    return tuple(out)


def _module_d(module: ThreadLike, j: int, m: Mono) -> Dict[ModMono, Fraction]:
    out: Dict[ModMono, Fraction] = {}
    idx = set(module.indices)
    top = max(module.indices)
    for i in range(1, top - j + 1):
        c = module.act(i, j)
        if not c:
            continue
        if i + j not in idx:
            raise ValueError(f"e_{i} f_{j} leaves the module")
        w = wedge_monomials((i,), m)
        if w is None:
            continue
        key = (i + j, w[1])
        out[key] = out.get(key, 0) - c * w[0]
    for mm, c in _d_mono(m):
        key = (j, mm)
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def module_differential_matrix(module: ThreadLike, q: int, s: int) -> SparseMatrix:
    src = module_basis(module, q, s)
    tgt = module_basis(module, q + 1, s)
    row = {b: i for i, b in enumerate(tgt)}
    entries = {}
    for col, (j, m) in enumerate(src):
        for key, v in _module_d(module, j, m).items():
            entries[(row[key], col)] = v
    return SparseMatrix(len(tgt), len(src), entries)


class ModuleCochain:
    """Module-valued cochain, ``{(j, monomial): coefficient}`` meaning sum c f_j (x) e^I."""

    __slots__ = ("_t", "degree")

    def __init__(self, terms: Optional[Mapping[ModMono, object]] = None, degree: Optional[int] = None):
        self._t = _clean(dict(terms or {}))
        degs = {len(m) for _, m in self._t}
        if len(degs) > 1:
            raise ValueError("module cochain is not degree-homogeneous")
        self.degree = degs.pop() if degs else degree

    @classmethod
    def tensor(cls, j: int, c: Cochain) -> "ModuleCochain":
        return cls({(j, m): v for m, v in c.terms.items()}, c.degree)

    @property
    def terms(self):
        return dict(self._t)

    def component(self, j: int) -> Cochain:
        return Cochain({m: v for (jj, m), v in self._t.items() if jj == j}, self.degree)

    def is_zero(self):
        return not self._t

    def __add__(self, other):
        t = dict(self._t)
        for k, v in other._t.items():
            t[k] = t[k] + v if k in t else v
        return ModuleCochain(t, self.degree if self.degree is not None else other.degree)

    def __neg__(self):
        return ModuleCochain({k: -v for k, v in self._t.items()}, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def d(self, module: ThreadLike) -> "ModuleCochain":
        out: Dict[ModMono, object] = {}
        for (j, m), v in self._t.items():
            for key, c in _module_d(module, j, m).items():
                inc = v * c
                out[key] = out[key] + inc if key in out else inc
        return ModuleCochain(out, None if self.degree is None else self.degree + 1)

    def __eq__(self, other):
        if not isinstance(other, ModuleCochain):
            return NotImplemented
        return self._t == other._t

    def __repr__(self):
        if not self._t:
            return "0"
        return " + ".join(
            f"({v})*f{j}(x)" + "^".join(f"e{i}" for i in m) for (j, m), v in sorted(self._t.items())
        )


@dataclass
class ModuleCohomologyReport:
    q: int
    s: int
    dimension: int
    representatives: List[ModuleCochain]
    coboundary_dim: int
    cocycle_dim: int


def module_cohomology(module: ThreadLike, q: int, s: int) -> ModuleCohomologyReport:
    """H^q_s(L1, M) for a finite thread module, weight s meaning |I| = j - s."""
    basis = module_basis(module, q, s)
    d_out = module_differential_matrix(module, q, s)
    d_in = module_differential_matrix(module, q - 1, s) if q >= 1 else SparseMatrix(len(basis), 0)
    kernel, img, reps = _block_cohomology(basis, d_in, d_out)
    cochains = [ModuleCochain({basis[i]: v for i, v in r.items()}, q) for r in reps]
    return ModuleCohomologyReport(q, s, len(reps), cochains, len(img), len(kernel))


# ---------------------------------------------------------------------------
# Filtration spectral sequence
# ---------------------------------------------------------------------------


class _Subspace:
    """Subspace of Q^n kept as a fully reduced echelon basis."""

    def __init__(self, n: int, vectors: Iterable[Dict[int, Fraction]] = ()):
        self.n = n
        self._b = _echelon(vectors, key=lambda j: j)

    @property
    def dim(self) -> int:
        return len(self._b)

    def vectors(self) -> List[Dict[int, Fraction]]:
        return [dict(v) for v in self._b.values()]

    def contains(self, v: Dict[int, Fraction]) -> bool:
        return not _reduce_against(dict(v), self._b)

    def __add__(self, other: "_Subspace") -> "_Subspace":
        return _Subspace(self.n, self.vectors() + other.vectors())


class SpectralSequence:
    """Spectral sequence of H^*(L1, V) filtered by the flag V_p = span(f_j : filt(j) >= p).

    Everything is computed inside one weight block s.  Pages are indexed by
    (p, n): filtration level p and total degree n.
    """

    def __init__(self, module: ThreadLike, s: int, degrees: Sequence[int], filtration: Optional[Mapping[int, int]] = None):
        self.module = module
        self.s = s
        self.filt = {j: (filtration[j] if filtration else j) for j in module.indices}
        for j in module.indices:
            top = max(module.indices)
            for i in range(1, top - j + 1):
                if module.act(i, j) and i + j in self.filt and self.filt[i + j] <= self.filt[j]:
                    raise FlagViolation(f"e_{i} f_{j} does not raise the flag index")
        self.degrees = sorted(set(degrees))
        lo, hi = self.degrees[0], self.degrees[-1]
        self.basis = {n: module_basis(module, n, s) for n in range(lo - 1, hi + 2) if n >= 0}
        self.dmat = {n: module_differential_matrix(module, n, s) for n in self.basis if n + 1 in self.basis}
        levels = sorted(set(self.filt.values()))
        self.levels = levels
        self.pmin, self.pmax = levels[0], levels[-1]

    # coordinates ---------------------------------------------------------
    def _level(self, n: int, idx: int) -> int:
        return self.filt[self.basis[n][idx][0]]

    def vector(self, c: ModuleCochain) -> Dict[int, Fraction]:
        n = c.degree
        index = {b: i for i, b in enumerate(self.basis[n])}
        return {index[k]: v for k, v in c.terms.items()}

    def cochain(self, n: int, v: Dict[int, Fraction]) -> ModuleCochain:
        return ModuleCochain({self.basis[n][i]: x for i, x in v.items()}, n)

    def _apply_d(self, n: int, v: Dict[int, Fraction]) -> Dict[int, Fraction]:
        m = self.dmat[n]
        out: Dict[int, Fraction] = {}
        for i, j, a in m.entries():
            if j in v:
                out[i] = out.get(i, 0) + a * v[j]
        return {i: x for i, x in out.items() if x}

    # filtration pieces ---------------------------------------------------
    def F(self, p: int, n: int) -> _Subspace:
        vecs = [{i: Fraction(1)} for i in range(len(self.basis.get(n, ()))) if self._level(n, i) >= p]
        return _Subspace(len(self.basis.get(n, ())), vecs)

    def Z(self, r: int, p: int, n: int) -> _Subspace:
        """{x in F^p C^n : dx in F^(p+r) C^(n+1)}; r <= 0 gives F^p."""
        size = len(self.basis.get(n, ()))
        if r <= 0 or n not in self.dmat:
            return self.F(p, n)
        cols = [i for i in range(size) if self._level(n, i) >= p]
        rows = [i for i in range(len(self.basis[n + 1])) if self._level(n + 1, i) < p + r]
        rpos = {i: k for k, i in enumerate(rows)}
        cpos = {i: k for k, i in enumerate(cols)}
        entries = {}
        for i, j, a in self.dmat[n].entries():
            if i in rpos and j in cpos:
                entries[(rpos[i], cpos[j])] = a
        ker = LinearSolver(SparseMatrix(len(rows), len(cols), entries)).kernel()
        vecs = [{cols[k]: x for k, x in enumerate(v) if x} for v in ker]
        return _Subspace(size, vecs)

    def B(self, r: int, p: int, n: int) -> _Subspace:
        """Denominator of E_r^{p,n}: Z_{r-1}^{p+1,n} + d Z_{r-1}^{p-r+1,n-1}."""
        size = len(self.basis.get(n, ()))
        den = self.Z(r - 1, p + 1, n)
        if n - 1 in self.dmat:
            src = self.Z(r - 1, p - r + 1, n - 1)
            den = den + _Subspace(size, [self._apply_d(n - 1, v) for v in src.vectors()])
        return den

    def dim(self, r: int, p: int, n: int) -> int:
        if n not in self.basis:
            return 0
        return self.Z(r, p, n).dim - self.B(r, p, n).dim

    def page(self, r: int) -> Dict[Tuple[int, int], int]:
        """Nonzero dimensions of E_r^{p,n} over the requested degrees."""
        out = {}
        for n in self.degrees:
            for p in range(self.pmin, self.pmax + 1):
                d = self.dim(r, p, n)
                if d:
                    out[(p, n)] = d
        return out

    def stable_page(self) -> int:
        """First r after which no differential can be nonzero (r exceeds the filtration length)."""
        return self.pmax - self.pmin + 1

    def d_r(self, x: ModuleCochain, p: int, r: int):
        """Apply d_r to the class of x in E_r^{p,n}.

        Returns None when x does not survive to E_r (some earlier d_r' is
        nonzero on it).  Otherwise returns (z, vanishes) where z is a cochain
        representing d_r[x] in E_r^{p+r, n+1}.
        """
        n = x.degree
        v = self.vector(x)
        size = len(self.basis[n])
        # correction y in F^{p+1} with d(x + y) in F^{p+r}
        cols = [i for i in range(size) if self._level(n, i) >= p + 1]
        rows = [i for i in range(len(self.basis[n + 1])) if self._level(n + 1, i) < p + r]
        rpos = {i: k for k, i in enumerate(rows)}
        entries = {}
        for i, j, a in self.dmat[n].entries():
            if i in rpos and j in cols:
                entries[(rpos[i], cols.index(j))] = a
        dx = self._apply_d(n, v)
        rhs = [-dx.get(i, 0) for i in rows]
        y = LinearSolver(SparseMatrix(len(rows), len(cols), entries)).solve(rhs)
        if y is None:
            return None
        lifted = dict(v)
        for k, val in enumerate(y):
            if val:
                lifted[cols[k]] = lifted.get(cols[k], 0) + val
        z = self._apply_d(n, {i: a for i, a in lifted.items() if a})
        vanishes = self.B(r, p + r, n + 1).contains(z)
        return self.cochain(n + 1, z), vanishes

    def same_class(self, z: ModuleCochain, w: ModuleCochain, r: int, p: int) -> bool:
        """Whether z and w define the same element of E_r^{p, n}."""
        diff = self.vector(z - w) if not (z - w).is_zero() else {}
        return self.B(r, p, z.degree).contains(diff)


def spectral_sequence(module: ThreadLike, s: int, degrees: Sequence[int], filtration=None) -> SpectralSequence:
    return SpectralSequence(module, s, degrees, filtration)
