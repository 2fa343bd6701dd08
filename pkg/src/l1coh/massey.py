"""Massey products in H^*(L1) through formal connections.

A product <w_1, ..., w_n> is encoded by entries a(i, j), 1 <= i <= j <= n,
with a(i, i) = w_i and

    d a(i, j) = sum_{r=i}^{j-1} bar(a(i, r)) ^ a(r+1, j),   bar(a) = (-1)^(k+1) a,

for every (i, j) except the corner (1, n), which is set to zero.  The related
cocycle is c(A) = sum_{r=1}^{n-1} bar(a(1, r)) ^ a(r+1, n).  As an
(n+1) x (n+1) lower-triangular matrix, a(i, j) sits at row n+1-i, column n-j,
and the equations read dA - bar(A) A = (corner).

Free choices in a defining system are parametrized by cohomology
representatives: at every slot a closed form can be added, and only its class
matters.  Parameters are ``ParamPoly`` variables; obstructions turn into
polynomial constraints on them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .cochain import (
    Cochain,
    ModuleCochain,
    NotClosed,
    SpectralSequence,
    cohomology,
    differential_matrix,
    monomials,
    vector_of,
)
from .cochain import e as e_form
from .exactnum import LinearSolver, ParamPoly, SparseMatrix, independent_subset

__all__ = [
    "NotCentral",
    "SingularC",
    "Undefined",
    "FormalConnection",
    "mat_bar",
    "mat_d",
    "mat_mul",
    "mu_matrix",
    "mc_residual",
    "Param",
    "DefiningSystem",
    "solve_defining_system",
    "related_cocycle",
    "class_coordinates",
    "MasseyVerdict",
    "product_set",
    "gauge_transform",
    "RigidityVerdict",
    "rigidity_check",
    "SpectralVerdict",
    "spectral_check",
    "rational_roots",
    "alpha_system",
    "AlphaReport",
    "alpha_analysis",
]


class NotCentral(ValueError):
    pass


class SingularC(ValueError):
    pass


class Undefined(ValueError):
    pass


Slot = Tuple[int, int]


# ---------------------------------------------------------------------------
# Matrices of forms
# ---------------------------------------------------------------------------


def _zero_like(x: Cochain) -> Cochain:
    return Cochain.zero(x.degree)


def mat_bar(M):
    return [[x.bar() for x in row] for row in M]


def mat_d(M):
    return [[x.d() for x in row] for row in M]


def mat_mul(X, Y):
    n, m, p = len(X), len(Y), len(Y[0]) if Y else 0
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = Cochain.zero()
            for k in range(m):
                if X[i][k].is_zero() or Y[k][j].is_zero():
                    continue
                acc = acc + X[i][k].wedge(Y[k][j])
            row.append(acc)
        out.append(row)
    return out


def mat_sub(X, Y):
    return [[x - y for x, y in zip(rx, ry)] for rx, ry in zip(X, Y)]


def mu_matrix(M):
    """dM - bar(M) M, entrywise."""
    return mat_sub(mat_d(M), mat_mul(mat_bar(M), M))


# ---------------------------------------------------------------------------
# Formal connections
# ---------------------------------------------------------------------------


@dataclass
class FormalConnection:
    """Entries a(i, j) of a defining system for an n-fold product."""

    n: int
    slots: Dict[Slot, Cochain]

    def a(self, i: int, j: int) -> Cochain:
        return self.slots.get((i, j), Cochain.zero(self.degree(i, j)))

    @property
    def inputs(self) -> List[Cochain]:
        return [self.slots[(i, i)] for i in range(1, self.n + 1)]

    def degree(self, i: int, j: int) -> int:
        return sum(self.slots[(r, r)].degree - 1 for r in range(i, j + 1)) + 1

    def nominal_weight(self, i: int, j: int) -> int:
        return sum(self.slots[(r, r)].weight for r in range(i, j + 1))

    def matrix(self) -> List[List[Cochain]]:
        n = self.n
        M = [[Cochain.zero() for _ in range(n + 1)] for _ in range(n + 1)]
        for (i, j), v in self.slots.items():
            M[n + 1 - i][n - j] = v
        return M

    @classmethod
    def from_matrix(cls, M: Sequence[Sequence[Cochain]]) -> "FormalConnection":
        n = len(M) - 1
        slots = {}
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                v = M[n + 1 - i][n - j]
                if not v.is_zero() or i == j:
                    slots[(i, j)] = v
        return cls(n, slots)

    def map_coefficients(self, f) -> "FormalConnection":
        return FormalConnection(self.n, {k: v.map_coefficients(f) for k, v in self.slots.items()})

    def evaluate(self, values: Mapping[str, object]) -> "FormalConnection":
        def ev(x):
            return x.evaluate(values) if isinstance(x, ParamPoly) else x

        return self.map_coefficients(ev)

    def __repr__(self):
        lines = [f"FormalConnection(n={self.n})"]
        for k in sorted(self.slots, key=lambda s: (s[1] - s[0], s)):
            lines.append(f"  a{k} = {self.slots[k]!r}")
        return "\n".join(lines)


def _slot_rhs(A: FormalConnection, i: int, j: int) -> Cochain:
    acc = Cochain.zero(A.degree(i, j) + 1)
    for r in range(i, j):
        x, y = A.a(i, r), A.a(r + 1, j)
        if x.is_zero() or y.is_zero():
            continue
        acc = acc + x.bar().wedge(y)
    return acc


def mc_residual(A: FormalConnection) -> Cochain:
    """The corner of dA - bar(A) A; raises NotCentral if any other entry is nonzero."""
    for L in range(0, A.n):
        for i in range(1, A.n - L + 1):
            j = i + L
            if (i, j) == (1, A.n):
                continue
            mu = A.a(i, j).d() - _slot_rhs(A, i, j)
            if not mu.is_zero():
                raise NotCentral(f"Maurer-Cartan fails at a({i},{j}): {mu!r}")
    return A.a(1, A.n).d() - _slot_rhs(A, 1, A.n)


def related_cocycle(A: FormalConnection) -> Cochain:
    return _slot_rhs(A, 1, A.n)


# ---------------------------------------------------------------------------
# Solving defining systems
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _solver(q: int, w: int) -> LinearSolver:
    return LinearSolver(differential_matrix(q, w))


def _primitive(rhs: Cochain, q: int):
    """A form x of degree q with dx = rhs, weight by weight, plus obstruction values."""
    sol = Cochain.zero(q)
    obstructions = []
    for w in rhs.weights():
        part = rhs.weight_component(w)
        basis = monomials(q + 1, w)
        b = vector_of(part, basis)
        ls = _solver(q, w)
        for k, val in enumerate(ls.obstruction(b)):
            if val:
                obstructions.append((w, val))
        x = ls.particular(b)
        src = monomials(q, w)
        sol = sol + Cochain({src[k]: v for k, v in enumerate(x) if v}, q)
    return sol, obstructions


@dataclass(frozen=True)
class Param:
    name: str
    slot: Slot
    weight: int
    delta: int  # nominal slot weight minus the weight of the representative
    rep: Cochain = field(compare=False)


@dataclass
class DefiningSystem:
    connection: FormalConnection
    params: List[Param]
    constraints: List[object]
    undefined: Optional[str] = None


def _pentagonal_weights(q: int, upto: int) -> List[int]:
    out = set()
    for w in range(q * (q + 1) // 2, upto + 1):
        if cohomology(q, w).dimension:
            out.add(w)
    return sorted(out)


def solve_defining_system(
    inputs: Sequence[Cochain],
    fixed: Optional[Mapping[Slot, Cochain]] = None,
    freedom: bool = True,
    budget: Optional[int] = None,
) -> DefiningSystem:
    """Solve the triangular system slot by slot, by increasing j - i.

    With ``freedom``, each solved slot gets one parameter per cohomology
    representative of its degree whose weight is at most the slot's nominal
    weight and at least nominal - budget.  ``budget=None`` allows all weights.
    Slots listed in ``fixed`` are taken verbatim and checked.
    """
    n = len(inputs)
    for k, w in enumerate(inputs):
        if w.degree is None or w.weight is None:
            raise ValueError(f"input {k + 1} must be a nonzero weight-homogeneous form")
        if not w.d().is_zero():
            raise NotClosed(f"input {k + 1} is not closed")
    A = FormalConnection(n, {(i + 1, i + 1): w for i, w in enumerate(inputs)})
    fixed = dict(fixed or {})
    params: List[Param] = []
    constraints: List[object] = []
    for L in range(1, n):
        for i in range(1, n - L + 1):
            j = i + L
            if (i, j) == (1, n):
                continue
            q = A.degree(i, j)
            rhs = _slot_rhs(A, i, j)
            if (i, j) in fixed:
                val = fixed[(i, j)]
                mu = val.d() - rhs
                for m, c in mu.terms.items():
                    if isinstance(c, ParamPoly) and not c.is_constant():
                        constraints.append(c)
                    elif c:
                        return DefiningSystem(A, params, constraints, f"fixed entry a({i},{j}) violates the equation")
                A.slots[(i, j)] = val
                continue
            sol, obs = _primitive(rhs, q)
            for w, val in obs:
                if isinstance(val, ParamPoly) and not val.is_constant():
                    constraints.append(val)
                else:
                    return DefiningSystem(
                        A, params, constraints, f"a({i},{j}) has no primitive at weight {w}"
                    )
            if freedom:
                nominal = A.nominal_weight(i, j)
                for w in _pentagonal_weights(q, nominal):
                    if budget is not None and nominal - w > budget:
                        continue
                    for k, rep in enumerate(cohomology(q, w).representatives):
                        name = f"x{i}_{j}_w{w}" + (f"_{k}" if k else "")
                        params.append(Param(name, (i, j), w, nominal - w, rep))
                        sol = sol + rep.scale(ParamPoly.var(name))
            A.slots[(i, j)] = sol
    return DefiningSystem(A, params, constraints)


def class_coordinates(c: Cochain, upto: Optional[int] = None) -> Dict[Tuple[int, int], object]:
    """Coordinates of c in the representative bases, keyed by (weight, index).

    Closedness is not checked; coefficients may be ParamPoly.
    """
    q = c.degree
    out = {}
    ws = c.weights()
    if not ws:
        return out
    for w in ws:
        rep = cohomology(q, w)
        if not rep.dimension:
            continue
        part = c.weight_component(w)
        x = rep._solver.particular(vector_of(part, monomials(q, w)))
        for k in range(rep.dimension):
            out[(w, k)] = x[k]
    return out


# ---------------------------------------------------------------------------
# Value sets
# ---------------------------------------------------------------------------


@dataclass
class MasseyVerdict:
    status: str  # DEFINED or UNDEFINED
    degree: Optional[int]
    nominal_weight: Optional[int]
    axes: List[Tuple[int, int]]  # (weight, index) of each coordinate
    point: Optional[List[Fraction]]
    directions: List[List[Fraction]]
    kind: str  # point, affine line, affine subspace, SEARCH_BOUNDED, undefined
    trivial: Optional[bool]
    param_count: int
    certificate: Optional[FormalConnection] = None
    found: List[Tuple[Fraction, ...]] = field(default_factory=list)
    reason: str = ""

    @property
    def dimension(self) -> int:
        return len(self.directions)

    @property
    def single_valued(self) -> bool:
        return self.status == "DEFINED" and self.kind == "point"

    def describe(self) -> str:
        if self.status != "DEFINED":
            return f"undefined: {self.reason}"
        ax = ", ".join(f"H^{self.degree}_{w}[{k}]" for w, k in self.axes) or "-"
        s = f"{self.kind} in ({ax}); point {[str(x) for x in (self.point or [])]}"
        if self.directions:
            s += f"; directions {[[str(x) for x in d] for d in self.directions]}"
        return s + f"; trivial={self.trivial}"


def _default_budget(degree: int, nominal: int) -> Optional[int]:
    ws = _pentagonal_weights(degree, nominal)
    return nominal - ws[0] if ws else 0


def _as_poly(x) -> ParamPoly:
    return x if isinstance(x, ParamPoly) else ParamPoly.const(x)


def product_set(
    inputs: Sequence[Cochain],
    fixed: Optional[Mapping[Slot, Cochain]] = None,
    budget: Optional[int] = -1,
    grid: Sequence[int] = (-2, -1, 0, 1, 2),
    grid_cap: int = 5,
) -> MasseyVerdict:
    """The set of classes [c(A)] over the parametrized defining systems.

    ``budget=-1`` (default) admits every lower-weight representative that can
    still reach a nonzero class of the target degree.
    """
    n = len(inputs)
    degree = sum(w.degree for w in inputs) - n + 2
    nominal = sum(w.weight for w in inputs)
    if budget == -1:
        budget = _default_budget(degree, nominal)
    ds = solve_defining_system(inputs, fixed=fixed, freedom=True, budget=budget)
    if ds.undefined:
        return MasseyVerdict("UNDEFINED", degree, nominal, [], None, [], "undefined", None, len(ds.params), reason=ds.undefined)
    c = related_cocycle(ds.connection)
    coords = class_coordinates(c) if not c.is_zero() else {}
    axes = sorted((w, k) for w in _pentagonal_weights(degree, nominal) for k in range(cohomology(degree, w).dimension))
    cvec = [_as_poly(coords.get(a, 0)) for a in axes]
    cons = [_as_poly(x) for x in ds.constraints if x]
    subs, cons = _eliminate_linear(cons)
    if any(p.is_constant() for p in cons):
        return MasseyVerdict(
            "UNDEFINED", degree, nominal, axes, None, [], "undefined", None, len(ds.params),
            reason="parameter constraints are inconsistent",
        )
    cvec = [p.substitute(subs) for p in cvec]

    def full_values(values):
        out = dict(values)
        for v, p in subs.items():
            out[v] = p.evaluate(values)
        return out

    # exact path: directions from parameters that occur only linearly in the
    # coordinates and not in any remaining constraint; needs one feasible point
    bound = {v for p in cons for v in p.variables()}
    exact = _affine_image(cvec, bound)
    if exact is not None:
        feasible = _feasible_point(cons, sorted(bound), grid, grid_cap)
        if feasible is not None:
            point, dirs = exact
            trivial = _in_affine(point, dirs)
            kind = "point" if not dirs else ("affine line" if len(dirs) == 1 else f"affine subspace of dimension {len(dirs)}")
            cert = ds.connection.evaluate(full_values(feasible))
            mc_residual(cert)
            return MasseyVerdict("DEFINED", degree, nominal, axes, point, dirs, kind, trivial, len(ds.params), cert)
    # nonlinear dependence: bounded search over the remaining free parameters
    names = sorted({v for p in cvec + cons for v in p.variables()})
    search = names[:grid_cap]
    found = set()
    cert = None
    for pt in itertools.product(grid, repeat=len(search)):
        values = dict(zip(search, (Fraction(x) for x in pt)))
        if any(p.evaluate(values) for p in cons):
            continue
        val = tuple(p.evaluate(values) for p in cvec)
        if cert is None:
            cert = ds.connection.evaluate(full_values(values))
            mc_residual(cert)
        found.add(val)
    if not found:
        return MasseyVerdict("UNDEFINED", degree, nominal, axes, None, [], "SEARCH_BOUNDED", None, len(ds.params),
                             reason="no grid point satisfies the constraints")
    found_sorted = sorted(found)
    trivial = True if tuple(Fraction(0) for _ in axes) in found else None
    return MasseyVerdict("DEFINED", degree, nominal, axes, list(found_sorted[0]), [], "SEARCH_BOUNDED", trivial,
                         len(ds.params), cert, found_sorted)


def _eliminate_linear(cons: List[ParamPoly]):
    """Solve constraints of degree one by substitution, as long as any remain."""
    subs: Dict[str, ParamPoly] = {}
    cons = [c for c in cons if c]
    while True:
        pick = next((c for c in cons if c.total_degree() == 1), None)
        if pick is None:
            return subs, cons
        var, a = sorted(pick.linear_part().items())[0]
        val = (pick - ParamPoly.var(var) * a) * ParamPoly.const(-1 / a)
        step = {var: val}
        subs = {v: p.substitute(step) for v, p in subs.items()}
        subs[var] = val
        cons = [q for q in (c.substitute(step) for c in cons) if q]


def _feasible_point(cons, names, grid, cap) -> Optional[Dict[str, Fraction]]:
    if not cons:
        return {}
    zero = {v: Fraction(0) for v in names}
    if not any(p.evaluate(zero) for p in cons):
        return zero
    for pt in itertools.product(grid, repeat=min(len(names), cap)):
        values = dict(zero, **dict(zip(names, (Fraction(x) for x in pt))))
        if not any(p.evaluate(values) for p in cons):
            return values
    return None


def _affine_image(cvec: List[ParamPoly], bound=frozenset()):
    """Image of a polynomial map whose non-affine part moves only along
    directions spanned by variables that occur purely linearly.

    Variables in ``bound`` (those tied by constraints) never contribute
    directions; their monomials, like every other non-free monomial, must
    have coefficient columns inside the free span.  The image is then the
    constant term plus that span, whatever the feasible set is, as long as
    it is nonempty.
    """
    nonlinear_vars = set(bound)
    for p in cvec:
        for mono in p.terms:
            if len(mono) > 1 or (mono and mono[0][1] > 1):
                nonlinear_vars |= {v for v, _ in mono}
    linear_vars = sorted({v for p in cvec for v in p.variables()} - nonlinear_vars)
    cols = [[p.linear_part().get(v, Fraction(0)) for p in cvec] for v in linear_vars]
    keep = independent_subset(cols, len(cvec)) if cols else []
    dirs = _rref_rows([cols[k] for k in keep])
    others = {mono for p in cvec for mono in p.terms if mono and not (len(mono) == 1 and mono[0][0] in linear_vars and mono[0][1] == 1)}
    for mono in others:
        col = [p.terms.get(mono, Fraction(0)) for p in cvec]
        if not _in_span(col, dirs):
            return None
    point = [p.constant_term() for p in cvec]
    if dirs:
        point = _reduce_point(point, dirs)
    return point, dirs


def _reduce_point(point, dirs):
    """Canonical base point: clear the pivot coordinates of the (rref) directions."""
    point = list(point)
    for d in dirs:
        piv = next(k for k, x in enumerate(d) if x)
        f = point[piv] / d[piv]
        point = [a - f * b for a, b in zip(point, d)]
    return point


def _in_span(v: Sequence[Fraction], dirs: Sequence[Sequence[Fraction]]) -> bool:
    if not any(v):
        return True
    if not dirs:
        return False
    m = SparseMatrix.from_dense([[d[r] for d in dirs] for r in range(len(v))], ncols=len(dirs))
    return LinearSolver(m).solve(list(v)) is not None


def _rref_rows(rows: List[List[Fraction]]) -> List[List[Fraction]]:
    if not rows:
        return []
    m = SparseMatrix.from_dense(rows)
    ls = LinearSolver(m)
    out = []
    for r in ls.reduced_rows():
        out.append([r.get(k, Fraction(0)) for k in range(m.ncols)])
    return out


def _in_affine(point: Sequence[Fraction], dirs: Sequence[Sequence[Fraction]]) -> bool:
    """Whether 0 lies on point + span(dirs)."""
    return _in_span(point, dirs)


# ---------------------------------------------------------------------------
# Gauge transformations
# ---------------------------------------------------------------------------


def _inverse_lower(C: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    n = len(C)
    for i in range(n):
        if not C[i][i]:
            raise SingularC(f"diagonal entry {i} vanishes")
        for j in range(i + 1, n):
            if C[i][j]:
                raise ValueError("gauge matrix must be lower triangular")
    inv = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        inv[j][j] = 1 / Fraction(C[j][j])
        for i in range(j + 1, n):
            acc = sum((Fraction(C[i][k]) * inv[k][j] for k in range(j, i)), Fraction(0))
            inv[i][j] = -acc / Fraction(C[i][i])
    return inv


def _scalar_times(S, M, left: bool):
    n = len(M)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = Cochain.zero()
            for k in range(n):
                s = S[i][k] if left else S[k][j]
                x = M[k][j] if left else M[i][k]
                if s and not x.is_zero():
                    acc = acc + x.scale(Fraction(s))
            row.append(acc)
        out.append(row)
    return out


def gauge_transform(A: FormalConnection, C: Sequence[Sequence[object]]) -> FormalConnection:
    """C^{-1} A C for a constant invertible lower-triangular C."""
    if len(C) != A.n + 1:
        raise ValueError("gauge matrix has the wrong size")
    inv = _inverse_lower(C)
    M = _scalar_times(inv, A.matrix(), left=True)
    M = _scalar_times(C, M, left=False)
    return FormalConnection.from_matrix(M)


# ---------------------------------------------------------------------------
# Rigidity
# ---------------------------------------------------------------------------


@dataclass
class RigidityVerdict:
    degree: int
    weight: int
    top_class: Optional[List[Fraction]]
    constant_top: bool
    lower_weights_zero: bool
    blocking_weights: List[int]

    @property
    def nontrivial(self) -> bool:
        return self.constant_top and bool(self.top_class) and any(self.top_class)

    @property
    def single_valued(self) -> bool:
        return self.constant_top and self.lower_weights_zero

    @property
    def passed(self) -> bool:
        return self.nontrivial


def rigidity_check(inputs: Sequence[Cochain], fixed: Optional[Mapping[Slot, Cochain]] = None) -> RigidityVerdict:
    """Weight argument for products whose nominal weight is pentagonal.

    (a) Over every homogeneous deformation of the defining system (freedom of
    weight drop 0) the class at the nominal weight stays constant; freedom of
    lower weight cannot reach that weight at all.  (b) If H^degree vanishes at
    every lower weight, the product is single-valued.
    """
    n = len(inputs)
    degree = sum(w.degree for w in inputs) - n + 2
    nominal = sum(w.weight for w in inputs)
    verdict = product_set(inputs, fixed=fixed, budget=0)
    top = None
    constant = False
    if verdict.status == "DEFINED" and verdict.kind != "SEARCH_BOUNDED":
        cols = [k for k, (w, _) in enumerate(verdict.axes) if w == nominal]
        constant = all(not d[k] for d in verdict.directions for k in cols)
        top = [verdict.point[k] for k in cols] if constant else None
    lower = [w for w in range(degree * (degree + 1) // 2, nominal) if cohomology(degree, w).dimension]
    return RigidityVerdict(degree, nominal, top, constant, not lower, lower)


# ---------------------------------------------------------------------------
# Spectral-sequence bridge
# ---------------------------------------------------------------------------


@dataclass
class SpectralVerdict:
    page: int
    vanishing: List[bool]
    target: Optional[ModuleCochain]
    differential: Optional[ModuleCochain]
    matches: bool
    nonzero: bool
    corner_class: Dict[Tuple[int, int], Fraction]

    @property
    def ok(self) -> bool:
        return all(self.vanishing) and self.matches


class Mismatch(AssertionError):
    pass


def connection_inputs(module_matrix: Sequence[Sequence[Cochain]]) -> List[Cochain]:
    """Second-diagonal entries in Massey order (bottom-right first)."""
    N = len(module_matrix)
    return [module_matrix[N - r][N - r - 1] for r in range(1, N)]


def spectral_check(module, omega: Cochain, filtration: Optional[Mapping[int, int]] = None, strict: bool = False) -> SpectralVerdict:
    """Compare d_r(f_low (x) Omega) with f_top (x) [c(A)] for a finite thread module.

    A is the module's connection extended by Omega and the solved first column.
    Differentials are reported with the sign of d(v (x) W) = dv ^ W - v (x) dW,
    the negative of the differential used for module cochains here.
    """
    from .threadmod import connection_of

    idx = list(module.indices)
    M = connection_of(module)
    N = len(idx) - 1  # number of one-forms
    ones = connection_inputs(M)
    inputs = ones + [omega]
    # module entries are fixed, only the column next to Omega is solved
    fixed = {}
    full = FormalConnection.from_matrix(_extend(M, omega))
    for (i, j), v in full.slots.items():
        if i < j and j <= N:
            fixed[(i, j)] = v
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            fixed.setdefault((i, j), Cochain.zero(1))
    ds = solve_defining_system(inputs, fixed=fixed, freedom=False)
    if ds.undefined:
        raise Undefined(ds.undefined)
    c = related_cocycle(ds.connection)
    corner = {k: Fraction(v) for k, v in class_coordinates(c).items()} if not c.is_zero() else {}
    low, top = idx[0], idx[-1]
    s = low - omega.weight
    filt = dict(filtration) if filtration else {j: j for j in idx}
    ss = SpectralSequence(module, s, [omega.degree, omega.degree + 1], filt)
    x = ModuleCochain.tensor(low, omega)
    R = filt[top] - filt[low]
    vanishing = []
    for r in range(1, R):
        res = ss.d_r(x, filt[low], r)
        vanishing.append(res is not None and res[1])
    res = ss.d_r(x, filt[low], R)
    if res is None:
        return SpectralVerdict(R, vanishing, None, None, False, False, corner)
    z, vanishes = res
    z_signed = ModuleCochain({k: -v for k, v in z.terms.items()}, z.degree)
    target = ModuleCochain.tensor(top, c)
    matches = ss.same_class(z_signed, target, R, filt[top]) if not (z_signed - target).is_zero() else True
    verdict = SpectralVerdict(R, vanishing, target, z_signed, matches, not vanishes, corner)
    if strict and not verdict.ok:
        raise Mismatch(f"d_{R} = {z_signed!r} but f_top (x) c(A) = {target!r}")
    return verdict


def _extend(M, omega: Cochain):
    """Put Omega next to the module block: full[r+1][c+1] = M[r][c], full[1][0] = Omega."""
    N1 = len(M)
    full = [[Cochain.zero() for _ in range(N1 + 1)] for _ in range(N1 + 1)]
    for r in range(N1):
        for c in range(N1):
            full[r + 1][c + 1] = M[r][c]
    full[1][0] = omega
    return full


# ---------------------------------------------------------------------------
# The alpha-family of connections on a chain of e^1
# ---------------------------------------------------------------------------


def alpha_system(ones: int, omega: Cochain, alpha=None) -> Tuple[List[Cochain], Dict[Slot, Cochain]]:
    """Inputs and fixed slots for <e^1, ..., e^1, Omega> whose one-form block is
    the module A_alpha: e^1 on the subdiagonal, alpha e^2 next to it.

    ``alpha=None`` keeps alpha as the ParamPoly variable ``alpha``.
    """
    a = ParamPoly.var("alpha") if alpha is None else Fraction(alpha)
    inputs = [e_form(1)] * ones + [omega]
    fixed: Dict[Slot, Cochain] = {}
    for i in range(1, ones + 1):
        for j in range(i + 1, ones + 1):
            fixed[(i, j)] = e_form(2).scale(a) if j == i + 1 else Cochain.zero(1)
    return inputs, fixed


@dataclass
class AlphaReport:
    degree: int
    weight: int
    constraints: List[ParamPoly]
    coordinates: Dict[Tuple[int, int], ParamPoly]
    defined_for: Optional[List[Fraction]]  # None: every alpha
    trivial_for: Optional[List[Fraction]]  # None: every alpha where defined


def alpha_analysis(ones: int, omega: Cochain) -> AlphaReport:
    """Corner class of the alpha-family as a polynomial in alpha.

    The remaining column is solved without freedom; when the target weight is
    the lowest pentagonal weight of its degree and the column slots carry no
    cohomology, the class does not depend on that choice.
    """
    inputs, fixed = alpha_system(ones, omega)
    ds = solve_defining_system(inputs, fixed=fixed, freedom=False)
    if ds.undefined:
        raise Undefined(ds.undefined)
    cons = [_as_poly(c) for c in ds.constraints if c]
    c = related_cocycle(ds.connection)
    coords = {k: _as_poly(v) for k, v in class_coordinates(c).items()} if c else {}
    defined = None
    if cons:
        roots = [set(rational_roots(p, "alpha")) for p in cons]
        defined = sorted(set.intersection(*roots))
    polys = [p for p in coords.values() if p]
    if not polys:
        trivial = None
    else:
        sets = [set(rational_roots(p, "alpha")) if not p.is_constant() else set() for p in polys]
        trivial = sorted(set.intersection(*sets))
        if defined is not None:
            trivial = [x for x in trivial if x in defined]
    degree = sum(w.degree for w in inputs) - len(inputs) + 2
    weight = sum(w.weight for w in inputs)
    return AlphaReport(degree, weight, cons, coords, defined, trivial)


# ---------------------------------------------------------------------------
# Small helper for the alpha analysis
# ---------------------------------------------------------------------------


def rational_roots(p: ParamPoly, var: str) -> List[Fraction]:
    """Rational roots of a univariate polynomial (rational root test)."""
    from math import gcd

    coeffs: Dict[int, Fraction] = {}
    for mono, c in p.terms.items():
        e = dict(mono).get(var, 0)
        if set(dict(mono)) - {var}:
            raise ValueError("polynomial has other variables")
        coeffs[e] = coeffs.get(e, 0) + c
    coeffs = {e: c for e, c in coeffs.items() if c}
    if not coeffs:
        raise ValueError("zero polynomial")
    low = min(coeffs)
    coeffs = {e - low: c for e, c in coeffs.items()}
    roots = [Fraction(0)] if low > 0 else []
    deg = max(coeffs)
    if deg == 0:
        return roots
    den = 1
    for c in coeffs.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {e: int(c * den) for e, c in coeffs.items()}
    a0, an = abs(ints.get(0, 0)), abs(ints[deg])

    def divisors(k):
        return [d for d in range(1, k + 1) if k % d == 0]

    cands = {Fraction(sgn * a, b) for a in divisors(a0) for b in divisors(an) for sgn in (1, -1)}
    for r in sorted(cands):
        if sum((c * r ** e for e, c in coeffs.items()), Fraction(0)) == 0:
            roots.append(r)
    return sorted(set(roots))
