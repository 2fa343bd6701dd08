"""Exact scalars and sparse linear algebra over the rationals.

Three coefficient types live here:

* ``Fraction`` (re-exported as ``Rational``) for the ground field,
* ``LaurentPoly`` for elements of Q[t, 1/t],
* ``ParamPoly`` for multivariate polynomials in named parameters; these are
  the coefficients of defining systems with free parameters.

Linear systems are only ever row-reduced over Q.  ``LinearSolver`` stores the
elimination so that right-hand sides with ``ParamPoly`` (or any ring) entries
can be pushed through it without pivoting on ring elements.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Rational = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "as_rational",
    "LaurentPoly",
    "ParamPoly",
    "SparseMatrix",
    "LinearSolver",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
]


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/2"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction))


# ---------------------------------------------------------------------------
# Laurent polynomials in one variable t
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Element of Q[t, t^-1] stored as ``{exponent: coefficient}``."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Optional[Mapping[int, Scalar]] = None):
        c: Dict[int, Fraction] = {}
        if coeffs:
            for e, v in coeffs.items():
                v = as_rational(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    @classmethod
    def t(cls, power: int = 1) -> "LaurentPoly":
        return cls({power: 1})

    @classmethod
    def const(cls, v: Scalar) -> "LaurentPoly":
        return cls({0: v})

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._c)

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    @property
    def low(self) -> Optional[int]:
        return min(self._c) if self._c else None

    @property
    def high(self) -> Optional[int]:
        return max(self._c) if self._c else None

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if _is_scalar(other):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            return LaurentPoly({e: v * other for e, v in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c: Dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials are invertible in Q[t, 1/t]")
            (e, v), = self._c.items()
            return LaurentPoly({e * n: Fraction(1) / v ** (-n)})
        out = LaurentPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if _is_scalar(other):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._c.items())))
        return self._hash

    def __call__(self, t: Scalar) -> Fraction:
        return self.evaluate(t)

    def evaluate(self, t: Scalar) -> Fraction:
        t = as_rational(t)
        if not t and self.low is not None and self.low < 0:
            raise ZeroDivisionError("negative power of t evaluated at t = 0")
        return sum((v * t ** e for e, v in self._c.items()), Fraction(0))

    def degree(self) -> int:
        if not self._c:
            raise ValueError("degree of the zero polynomial")
        return max(self._c)

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            if e == 0:
                parts.append(f"{v}")
            elif e == 1:
                parts.append(f"{v}*t")
            else:
                parts.append(f"{v}*t^{e}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Multivariate polynomials in named parameters
# ---------------------------------------------------------------------------

Monomial = Tuple[Tuple[str, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class ParamPoly:
    """Polynomial over Q in named parameters, ``{monomial: coefficient}``.

    A monomial is a sorted tuple of ``(name, exponent)`` pairs; ``()`` is 1.
    Mixed arithmetic with ints and Fractions is supported on both sides.
    """

    __slots__ = ("_t",)

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        t: Dict[Monomial, Fraction] = {}
        if terms:
            for m, v in terms.items():
                if v:
                    t[m] = Fraction(v)
        self._t = t

    @classmethod
    def var(cls, name: str) -> "ParamPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, v: Scalar) -> "ParamPoly":
        return cls({(): v})

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_constant(self) -> bool:
        return all(m == () for m in self._t)

    def constant_term(self) -> Fraction:
        return self._t.get((), Fraction(0))

    def total_degree(self) -> int:
        if not self._t:
            return -1
        return max(sum(e for _, e in m) for m in self._t)

    def variables(self) -> set:
        return {v for m in self._t for v, _ in m}

    def linear_part(self) -> Dict[str, Fraction]:
        return {m[0][0]: c for m, c in self._t.items() if len(m) == 1 and m[0][1] == 1}

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        total = Fraction(0)
        for m, c in self._t.items():
            term = c
            for v, e in m:
                term *= Fraction(values.get(v, 0)) ** e
            total += term
        return total

    def substitute(self, values: Mapping[str, "ParamPoly"]) -> "ParamPoly":
        """Replace variables by polynomials; unmapped variables are kept."""
        out = ParamPoly()
        for m, c in self._t.items():
            term = ParamPoly.const(c)
            for v, e in m:
                base = values.get(v)
                if base is None:
                    base = ParamPoly.var(v)
                for _ in range(e):
                    term = term * base
            out = out + term
        return out

    def _lift(self, other):
        if isinstance(other, ParamPoly):
            return other
        if _is_scalar(other):
            return ParamPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        if _is_scalar(other):
            if not other:
                return self
            t = dict(self._t)
            t[()] = t.get((), 0) + other
            return ParamPoly(t)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        t = dict(self._t)
        for m, v in other._t.items():
            t[m] = t.get(m, 0) + v
        return ParamPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly({m: -v for m, v in self._t.items()})

    def __sub__(self, other):
        if _is_scalar(other):
            return self + (-other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            if not other:
                return ParamPoly()
            return ParamPoly({m: v * other for m, v in self._t.items()})
        if not isinstance(other, ParamPoly):
            return NotImplemented
        t: Dict[Monomial, Fraction] = {}
        for m1, v1 in self._t.items():
            for m2, v2 in other._t.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, 0) + v1 * v2
        return ParamPoly(t)

    __rmul__ = __mul__

    def __eq__(self, other):
        if _is_scalar(other):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(tuple(sorted(self._t.items())))

    def __repr__(self):
        if not self._t:
            return "0"
        parts = []
        for m in sorted(self._t, key=lambda m: (len(m), m)):
            c = self._t[m]
            name = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            parts.append(f"{c}" if not m else f"{c}*{name}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Sparse matrices
# ---------------------------------------------------------------------------

Row = Dict[int, Fraction]


class SparseMatrix:
    """Fixed-shape matrix over Q, stored row-wise without zeros."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, entries: Optional[Mapping[Tuple[int, int], Scalar]] = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimension")
        self.nrows = nrows
        self.ncols = ncols
        rows: Dict[int, Row] = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < nrows and 0 <= j < ncols):
                    raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
                v = as_rational(v)
                if v:
                    rows.setdefault(i, {})[j] = v
        self._rows = rows

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[Scalar]], ncols: Optional[int] = None) -> "SparseMatrix":
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        entries = {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r) if v}
        return cls(nrows, ncols, entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, Scalar]], ncols: int) -> "SparseMatrix":
        entries = {(i, j): v for i, r in enumerate(rows) for j, v in r.items()}
        return cls(len(rows), ncols, entries)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def row(self, i: int) -> Row:
        return dict(self._rows.get(i, {}))

    def rows(self) -> List[Row]:
        return [self.row(i) for i in range(self.nrows)]

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows.get(i, {}).get(j, Fraction(0))

    def entries(self) -> Iterator[Tuple[int, int, Fraction]]:
        for i in sorted(self._rows):
            r = self._rows[i]
            for j in sorted(r):
                yield i, j, r[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows, {(j, i): v for i, j, v in self.entries()})

    def matvec(self, x: Sequence) -> list:
        if len(x) != self.ncols:
            raise ValueError("dimension mismatch in matvec")
        out = []
        for i in range(self.nrows):
            acc = 0
            for j, v in self._rows.get(i, {}).items():
                if x[j]:
                    acc = acc + v * x[j]
            out.append(acc)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in matmul")
        entries: Dict[Tuple[int, int], Fraction] = {}
        for i, r in self._rows.items():
            for k, a in r.items():
                for j, b in other._rows.get(k, {}).items():
                    entries[(i, j)] = entries.get((i, j), 0) + a * b
        return SparseMatrix(self.nrows, other.ncols, entries)

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self._rows == other._rows

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------


def _axpy(row: Row, f: Fraction, other: Row) -> Row:
    """Return row - f*other, dropping zeros."""
    out = dict(row)
    for j, v in other.items():
        w = out.get(j, 0) - f * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    return out


class LinearSolver:
    """Gauss-Jordan elimination of a fixed matrix, reusable for many RHS.

    Every reduced row remembers which combination of the original rows
    produced it.  Right-hand sides may have entries in any ring that accepts
    multiplication by Fractions (``ParamPoly``, ``LaurentPoly``, ...).
    """

    def __init__(self, m: SparseMatrix):
        self.nrows, self.ncols = m.nrows, m.ncols
        basis: Dict[int, Tuple[Row, Row]] = {}
        left_null: List[Row] = []
        for i in range(m.nrows):
            r = m.row(i)
            comb: Row = {i: Fraction(1)}
            for p in [c for c in r if c in basis]:
                f = r.get(p)
                if not f:
                    continue
                br, bc = basis[p]
                r = _axpy(r, f, br)
                comb = _axpy(comb, f, bc)
            if not r:
                left_null.append(comb)
                continue
            pc = min(r)
            inv = 1 / r[pc]
            r = {j: v * inv for j, v in r.items()}
            comb = {j: v * inv for j, v in comb.items()}
            for q, (br, bc) in list(basis.items()):
                f = br.get(pc)
                if f:
                    basis[q] = (_axpy(br, f, r), _axpy(bc, f, comb))
            basis[pc] = (r, comb)
        self._basis = dict(sorted(basis.items()))
        self._left_null = left_null

    @property
    def rank(self) -> int:
        return len(self._basis)

    @property
    def pivots(self) -> List[int]:
        return list(self._basis)

    def reduced_rows(self) -> List[Row]:
        return [dict(r) for r, _ in self._basis.values()]

    @staticmethod
    def _combine(comb: Row, b: Sequence):
        acc = 0
        for i, c in comb.items():
            bi = b[i]
            if bi:
                acc = acc + c * bi
        return acc

    def obstruction(self, b: Sequence) -> list:
        """Values of the consistency functionals on b; all zero iff solvable."""
        if len(b) != self.nrows:
            raise ValueError("right-hand side has wrong length")
        return [self._combine(comb, b) for comb in self._left_null]

    def is_consistent(self, b: Sequence) -> bool:
        return all(not v for v in self.obstruction(b))

    def particular(self, b: Sequence) -> list:
        """Solution with all free variables zero; assumes consistency."""
        if len(b) != self.nrows:
            raise ValueError("right-hand side has wrong length")
        x: list = [0] * self.ncols
        for pc, (_, comb) in self._basis.items():
            x[pc] = self._combine(comb, b)
        return x

    def solve(self, b: Sequence) -> Optional[list]:
        if not self.is_consistent(b):
            return None
        return self.particular(b)

    def kernel(self) -> List[List[Fraction]]:
        free = [j for j in range(self.ncols) if j not in self._basis]
        out = []
        for f in free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for pc, (r, _) in self._basis.items():
                c = r.get(f)
                if c:
                    v[pc] = -c
            out.append(v)
        return out


def rref(m: SparseMatrix) -> Tuple[SparseMatrix, List[int]]:
    """Reduced row-echelon form and the (increasing) pivot columns."""
    ls = LinearSolver(m)
    rows = ls.reduced_rows()
    rows += [{}] * (m.nrows - len(rows))
    return SparseMatrix.from_rows(rows, m.ncols), ls.pivots


def rank(m: SparseMatrix) -> int:
    return LinearSolver(m).rank


def kernel_basis(m: SparseMatrix) -> List[List[Fraction]]:
    """Basis of the right null space; one vector per free column."""
    return LinearSolver(m).kernel()


def solve(m: SparseMatrix, b: Sequence[Scalar]) -> Optional[List[Fraction]]:
    """A particular solution of m x = b, or None when the system is inconsistent."""
    return LinearSolver(m).solve([as_rational(v) for v in b])


def independent_subset(vectors: Iterable[Sequence[Fraction]], n: int) -> List[int]:
    """Indices of a maximal independent prefix-greedy subset of the vectors."""
    basis: Dict[int, Row] = {}
    keep = []
    for idx, vec in enumerate(vectors):
        r = {j: Fraction(v) for j, v in enumerate(vec) if v}
        for p in [c for c in r if c in basis]:
            f = r.get(p)
            if f:
                r = _axpy(r, f, basis[p])
        if not r:
            continue
        pc = min(r)
        inv = 1 / r[pc]
        r = {j: v * inv for j, v in r.items()}
        for q, br in list(basis.items()):
            f = br.get(pc)
            if f:
                basis[q] = _axpy(br, f, r)
        basis[pc] = r
        keep.append(idx)
    return keep
