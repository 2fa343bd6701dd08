"""Named verification checks, shared by the CLI ``verify`` command and the test suite.

Each check returns a ``CheckResult``; nothing here raises on a failed
comparison, so a suite can report every line.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from .cochain import Cochain, class_of, cohomology, e, pentagonal
from .envelope import bsa_operator, multiply
from .liealg import L1, OutOfWindow, bracket, virasoro, witt
from .massey import (
    alpha_analysis,
    class_coordinates,
    gauge_transform,
    mat_bar,
    mat_d,
    mat_mul,
    mu_matrix,
    product_set,
    rigidity_check,
    solve_defining_system,
    related_cocycle,
    spectral_check,
)
from .resolution import S_op, cross_validate, verify_exactness, Mismatch
from .threadmod import A, CustomB, F, Mtilde, MtildeNonzero, f_poly, sigma, uniqueness_solve
from .verma import as_operator, singular_vector

__all__ = ["CheckResult", "CRITERIA", "SUITES", "run_suite", "g_label"]


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(name: str, fn: Callable[[], Tuple[bool, str]]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, with the reason
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, ok, detail, time.perf_counter() - t0)


def g_label(k: int, sign: str) -> Cochain:
    """The deterministic representative of H^k at weight (3k^2 +- k)/2."""
    w = pentagonal(k, 1 if sign == "+" else -1)
    reps = cohomology(k, w).representatives
    if len(reps) != 1:
        raise ValueError(f"H^{k}_{w} is not one-dimensional")
    return reps[0]


# ---------------------------------------------------------------------------
# 1-2: trivial-coefficient cohomology
# ---------------------------------------------------------------------------


def goncharova(q_max: int = 4, mu_max: int = 26) -> Tuple[bool, str]:
    bad = []
    for q in range(1, q_max + 1):
        pent = {pentagonal(q, 1), pentagonal(q, -1)}
        for mu in range(1, mu_max + 1):
            dim = cohomology(q, mu).dimension
            if dim != (1 if mu in pent else 0):
                bad.append((q, mu, dim))
    return not bad, f"q<={q_max}, mu<={mu_max}; mismatches {bad}" if bad else f"pattern holds for q<={q_max}, mu<={mu_max}"


def low_degree_reps() -> Tuple[bool, str]:
    w1 = [w for w in range(1, 8) if cohomology(1, w).dimension]
    w2 = [w for w in range(1, 15) if cohomology(2, w).dimension]
    target = e(2, 5) - e(3, 4).scale(3)
    rep = cohomology(2, 7)
    coord = class_of(target, rep)
    # rep - lambda * target must be exact
    lam = 1 / coord[0] if coord[0] else None
    residual = class_of(rep.representatives[0] - target.scale(lam), rep) if lam else None
    ok = w1 == [1, 2] and w2 == [5, 7] and lam is not None and not any(residual)
    return ok, f"H^1 weights {w1}, H^2 weights {w2} (w<=14); rep_7 = {lam} * (e2^e5 - 3 e3^e4) mod coboundaries"


# ---------------------------------------------------------------------------
# 3-6: singular vectors, resolution, the glued module
# ---------------------------------------------------------------------------

T_VALUES = (Fraction(-3, 2), Fraction(-2, 3), Fraction(1), Fraction(2), Fraction(-5))


def bsa_verma(p_max: int = 6, ts: Sequence[Fraction] = T_VALUES) -> Tuple[bool, str]:
    bad = []
    count = 0
    for t in ts:
        for r in range(1, p_max + 1):
            for p, q in ((r, 1), (1, r)):
                a = as_operator(singular_vector(p, q, t))
                b = bsa_operator(p, q).specialize(t)
                lead = b.coeff((1,) * r)
                b = b.scale(1 / lead)
                count += 1
                if a != b:
                    bad.append((p, q, t))
    return not bad, f"{count} cases; mismatches {bad}" if bad else f"{count} (p,q,t) cases agree"


def resolution_k1() -> Tuple[bool, str]:
    rep = verify_exactness(1)
    lhs = multiply(S_op(3, 1), S_op(1, 2))
    rhs = multiply(S_op(1, 4), S_op(1, 1))
    ok = bool(rep) and lhs == rhs
    return ok, f"delta_1 o delta_2 = 0: {bool(rep)}; S31 S12 = S14 S11: {lhs == rhs}"


def thread_formula(p_max: int = 6) -> Tuple[bool, str]:
    bad = []
    n = 0
    spec = Mtilde()
    for p in range(2, p_max + 1):
        S = bsa_operator(p, 1)
        for j in range(-p + 1, 0):
            n += 1
            if sigma(spec, S, j) != f_poly(j, p):
                bad.append((p, j))
    return not bad, f"{n} (p, j) identities in t; failures {bad}" if bad else f"{n} (p, j) identities hold in t"


def thread_roots(p_max: int = 20, j_min: int = -20) -> Tuple[bool, str]:
    bad = []
    n = 0
    for p in range(2, p_max + 1):
        for j in range(j_min, 0):
            if p + j <= 0:
                continue
            n += 1
            F = f_poly(j, p)
            at_res = F.evaluate(Fraction(-3, 2))
            at_23 = F.evaluate(Fraction(-2, 3))
            if at_res == 0 or ((at_23 == 0) != (p + 3 * j == 1)):
                bad.append((p, j))
    return not bad, f"{n} (p, j) pairs; failures {bad}" if bad else f"{n} (p, j) pairs satisfy both statements"


def mtilde_uniqueness() -> Tuple[bool, str]:
    b = uniqueness_solve(-6, 6)
    want = {1: 3, 2: 2, 3: Fraction(3, 2), -3: -3, -4: -2, -5: Fraction(-3, 2)}
    m, n = -6, 6
    # b_m = 6/(m+1) (the criterion's minus sign contradicts its own b_{-3} = -3)
    boundary = {m: Fraction(6, m + 1), n - 2: Fraction(6, n - 1)}
    bad = {k: (b.get(k), v) for k, v in {**want, **boundary}.items() if b.get(k) != v}
    shown = {k: str(v) for k, v in sorted(b.items())}
    return not bad, f"b = {shown}" + (f"; mismatches {bad}" if bad else "")


# ---------------------------------------------------------------------------
# 8: nontrivial Massey products with k <= 2
# ---------------------------------------------------------------------------


def massey_main() -> Tuple[bool, str]:
    gp = g_label(2, "+")
    notes = []
    ok = True
    # (a)
    v = product_set([e(1), e(2), e(2)])
    target = class_of(e(2, 3).scale(-1), cohomology(2, 5))
    a_ok = v.single_valued and v.point == target and not v.trivial
    notes.append(f"(a) {'ok' if a_ok else 'FAIL'} point {[str(x) for x in v.point or []]}")
    ok &= a_ok
    # (b)
    v = product_set([e(1), e(2), e(1), e(1), e(2)])
    b_ok = v.kind == "affine line" and v.trivial is False and v.axes == [(5, 0), (7, 0)]
    notes.append(f"(b) {'ok' if b_ok else 'FAIL'} {v.kind}, trivial={v.trivial}")
    ok &= b_ok
    # (c) <e1^m, e2, e1^n, g+^2>, m + n = 3
    for m in range(4):
        ins = [e(1)] * m + [e(2)] + [e(1)] * (3 - m) + [gp]
        v = product_set(ins)
        rig = rigidity_check(ins)
        c_ok = (
            v.single_valued and v.axes == [(12, 0)] and bool(v.point and v.point[0])
            and rig.nontrivial and rig.single_valued
        )
        notes.append(
            f"(c m={m}) {'ok' if c_ok else 'FAIL'} {v.kind}, point {[str(x) for x in v.point or []]}, trivial={v.trivial}"
        )
        ok &= c_ok
    # (d) <e1^2, e2, e1^4, g+^2>
    ins = [e(1)] * 2 + [e(2)] + [e(1)] * 4 + [gp]
    v = product_set(ins)
    d_ok = (
        v.kind == "affine line" and v.trivial is False and v.axes == [(12, 0), (15, 0)]
        and v.directions == [[1, 0]] and v.point[1] != 0
    )
    notes.append(f"(d) {'ok' if d_ok else 'FAIL'} {v.kind} parallel to H^3_12, H^3_15 coordinate {v.point[1] if v.point else None}")
    ok &= d_ok
    return ok, "; ".join(notes)


# ---------------------------------------------------------------------------
# 9-11: oracles, spectral sequence, the alpha family
# ---------------------------------------------------------------------------


def oracle_equivalence(s_max: int = 10) -> Tuple[bool, str]:
    bad = []
    n = 0
    for spec in (Mtilde(-2, 3), A(Fraction(1, 6), 0, 6)):
        for s in range(-s_max, s_max + 1):
            try:
                cross_validate(spec, s, [0, 1, 2, 3])
            except Mismatch as exc:
                bad.append(str(exc))
            n += 1
    return not bad, f"{n} (module, s) blocks, degrees 0..3" + (f"; {bad}" if bad else " agree")


def spectral_instance() -> Tuple[bool, str]:
    gp = g_label(2, "+")
    notes = []
    ok = True
    for m in range(4):
        n = 3 - m
        v = spectral_check(MtildeNonzero(-(n + 1), m + 1), gp)
        this = v.page == 5 and all(v.vanishing) and len(v.vanishing) == 4 and v.matches and v.nonzero
        ok &= this
        notes.append(f"m={m}: d1..d4 vanish={all(v.vanishing)}, d5 = f_top (x) [c(A)]: {v.matches}, nonzero: {v.nonzero}")
    return ok, "; ".join(notes)


def ffr_alpha() -> Tuple[bool, str]:
    gp = g_label(2, "+")
    big = alpha_analysis(5, gp)
    small = alpha_analysis(3, g_label(1, "+"))
    ok = big.trivial_for == [Fraction(1, 24), Fraction(1, 6)] and small.trivial_for == [Fraction(1, 6)]
    ok &= big.defined_for is None and small.defined_for is None
    return ok, (
        f"Omega=g+^2: trivial iff alpha in {[str(x) for x in big.trivial_for or []]}; "
        f"Omega=g+^1: trivial iff alpha in {[str(x) for x in small.trivial_for or []]}"
    )


# ---------------------------------------------------------------------------
# 12: randomized property suites (fixed seeds)
# ---------------------------------------------------------------------------


def _jacobi(kind, i, j, k) -> bool:
    def br(x, y):
        # bracket of basis elements as {index: coeff}, central part under key None
        r = bracket(kind, x, y)
        out = {idx: c for idx, c in r.terms}
        if r.central:
            out[None] = r.central
        return out

    def br_vec(vec, y):
        out: Dict = {}
        for idx, c in vec.items():
            if idx is None:
                continue  # central
            for k2, c2 in br(idx, y).items():
                out[k2] = out.get(k2, 0) + c * c2
        return out

    total: Dict = {}
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        for key, val in br_vec(br(a, b), c).items():
            total[key] = total.get(key, 0) + val
    return not any(total.values())


def _random_cochain(rng: random.Random, q: int, w: int) -> Cochain:
    from .cochain import monomials

    basis = monomials(q, w)
    if not basis:
        return Cochain.zero(q)
    return Cochain({m: Fraction(rng.randint(-3, 3)) for m in rng.sample(basis, min(3, len(basis)))}, q)


def _random_matrix(rng: random.Random, h: Sequence[int]) -> List[List[Cochain]]:
    """Strictly lower-triangular matrix with entry (r, c) of degree h[r] - h[c] + 1,
    so that all products and differentials are degree-homogeneous."""
    n = len(h)
    M = [[Cochain.zero() for _ in range(n)] for _ in range(n)]
    for r in range(n):
        for c in range(r):
            q = h[r] - h[c] + 1
            M[r][c] = _random_cochain(rng, q, rng.randint(q * (q + 1) // 2, 9))
    return M


def properties(seed: int = 20240501, rounds: int = 30) -> Tuple[bool, str]:
    rng = random.Random(seed)
    fails = []
    # Jacobi
    kinds = [L1(12), witt(-6, 6), virasoro(-6, 6)]
    for kind in kinds:
        for _ in range(rounds):
            i, j, k = (rng.randint(kind.lo, kind.hi) for _ in range(3))
            try:
                if not _jacobi(kind, i, j, k):
                    fails.append(("jacobi", kind.name, i, j, k))
            except OutOfWindow:
                continue
    # d o d = 0, trivial and module coefficients
    for _ in range(rounds):
        q = rng.randint(0, 4)
        w = rng.randint(q * (q + 1) // 2, 20)
        c = _random_cochain(rng, q, w)
        if not c.d().d().is_zero():
            fails.append(("dd", q, w))
    from .cochain import module_differential_matrix

    for spec in (Mtilde(-3, 4), A(Fraction(1, 6), 0, 5), F(Fraction(1, 2), Fraction(1, 3), -2, 3)):
        for _ in range(5):
            q, s = rng.randint(0, 2), rng.randint(-8, 0)
            d1 = module_differential_matrix(spec, q, s)
            d2 = module_differential_matrix(spec, q + 1, s)
            if d1.nrows and d1.ncols and d2.nrows and not (d2 @ d1).is_zero():
                fails.append(("dd-module", spec.variant, q, s))
    # Bianchi and involution laws on random lower-triangular matrices
    for _ in range(rounds // 3):
        n = rng.randint(2, 4)
        h = sorted(rng.randint(0, 1) for _ in range(n))
        X, Y = _random_matrix(rng, h), _random_matrix(rng, h)
        mu = mu_matrix(X)
        lhs = mat_d(mu)
        rhs = _mat_add(mat_mul(mat_bar(mu), X), mat_mul(X, mu))
        if not _mat_eq(lhs, rhs):
            fails.append(("bianchi", n))
        if not _mat_eq(mat_bar(mat_bar(X)), X):
            fails.append(("bar-bar", n))
        if not _mat_eq(mat_bar(mat_mul(X, Y)), _mat_neg(mat_mul(mat_bar(X), mat_bar(Y)))):
            fails.append(("bar-product", n))
        if not _mat_eq(mat_bar(mat_d(X)), _mat_neg(mat_d(mat_bar(X)))):
            fails.append(("bar-d", n))
    # gauge invariance of the corner class
    ds = solve_defining_system([e(1), e(2), e(2)], freedom=False)
    base = class_of(related_cocycle(ds.connection), cohomology(2, 5))[0]
    for _ in range(rounds // 3):
        x = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3])) for _ in range(3)]
        # diag(x1 x2 x3, x1 x2, x1, 1) scales the triple product by x1 x2 x3;
        # the strictly lower part is a unipotent factor, which changes nothing
        C = [[Fraction(rng.randint(-2, 2)) if c < r else Fraction(0) for c in range(4)] for r in range(4)]
        for i, v in enumerate((x[0] * x[1] * x[2], x[0] * x[1], x[0], Fraction(1))):
            C[i][i] = v
        B = gauge_transform(ds.connection, C)
        got = class_coordinates(related_cocycle(B)).get((5, 0), 0)
        if got != base * x[0] * x[1] * x[2]:
            fails.append(("gauge", tuple(x)))
    # representation law e_i e_j - e_j e_i = (j - i) e_{i+j} on thread modules
    b = uniqueness_solve(-6, 6)
    specs = [A(Fraction(1, 6), 0, 8), F(Fraction(2, 3), Fraction(1, 5), -4, 4), Mtilde(-5, 5),
             MtildeNonzero(-5, 5), CustomB(b, -6, 6)]
    for spec in specs:
        idx = spec.indices
        for _ in range(rounds):
            i, j = rng.randint(1, 6), rng.randint(1, 6)
            f = rng.choice(idx)
            lhs = spec.act(i, j + f) * spec.act(j, f) - spec.act(j, i + f) * spec.act(i, f)
            rhs = (j - i) * spec.act(i + j, f)
            if lhs != rhs:
                fails.append(("representation", spec.variant, i, j, f))
    return not fails, f"seed {seed}: " + (f"failures {fails[:6]}" if fails else "Jacobi, d^2=0, Bianchi, involutions, gauge, representation laws hold")


def _mat_add(X, Y):
    return [[x + y for x, y in zip(a, b)] for a, b in zip(X, Y)]


def _mat_neg(X):
    return [[-x for x in row] for row in X]


def _mat_eq(X, Y) -> bool:
    return all((x - y).is_zero() for a, b in zip(X, Y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

CRITERIA: Dict[int, Tuple[str, Callable[[], Tuple[bool, str]]]] = {
    1: ("Goncharova pattern q<=4, mu<=26", goncharova),
    2: ("H^1, H^2 representatives", low_degree_reps),
    3: ("closed-formula vs Verma singular vectors", bsa_verma),
    4: ("resolution exactness k=1", resolution_k1),
    5: ("S_{p,1} on M~ equals F_{j,p}", thread_formula),
    6: ("roots of F_{j,p}", thread_roots),
    7: ("M~ uniqueness recurrence", mtilde_uniqueness),
    8: ("Massey products k<=2", massey_main),
    9: ("resolution vs cochain oracle", oracle_equivalence),
    10: ("spectral-sequence instance", spectral_instance),
    11: ("alpha-family triviality", ffr_alpha),
    12: ("property suites", properties),
}

SUITES: Dict[str, Tuple[int, ...]] = {
    "goncharova": (1, 2),
    "bsa": (3,),
    "verma": (3,),
    "resolution": (4, 9),
    "thread": (5, 6, 7),
    "massey": (8, 10),
    "ffr": (11,),
    "properties": (12,),
    "all": tuple(range(1, 13)),
}


def run_criterion(number: int) -> CheckResult:
    name, fn = CRITERIA[number]
    return _timed(f"criterion {number}: {name}", fn)


def run_suite(name: str, deadline: float = None) -> List[CheckResult]:
    """Run a named suite; stops early (returning what ran) once ``deadline`` passes."""
    out = []
    for k in SUITES[name]:
        if deadline is not None and time.perf_counter() > deadline:
            break
        out.append(run_criterion(k))
    return out
