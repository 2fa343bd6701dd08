from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from l1coh.exactnum import LaurentPoly, LinearSolver, ParamPoly, SparseMatrix, as_rational

rats = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def test_as_rational_rejects_float():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert as_rational("3/4") == Fraction(3, 4)


def test_laurent_arithmetic():
    t = LaurentPoly.t()
    p = (t + LaurentPoly.t(-1)) ** 2
    assert p.coeff(0) == 2 and p.coeff(2) == 1 and p.coeff(-2) == 1
    assert p.evaluate(Fraction(1, 2)) == Fraction(25, 4)


@settings(derandomize=True, max_examples=40)
@given(rats, rats, rats)
def test_laurent_evaluation_is_a_homomorphism(a, b, x):
    if x == 0:
        return
    p = LaurentPoly({1: a, -1: b})
    q = LaurentPoly({0: b, 2: a})
    assert (p * q).evaluate(x) == p.evaluate(x) * q.evaluate(x)
    assert (p + q).evaluate(x) == p.evaluate(x) + q.evaluate(x)


def test_param_poly():
    x, y = ParamPoly.var("x"), ParamPoly.var("y")
    p = x * y + 2 * x - 3
    assert p.total_degree() == 2
    assert p.variables() == {"x", "y"}
    assert p.linear_part() == {"x": 2}
    assert p.evaluate({"x": 2, "y": Fraction(1, 2)}) == 2
    assert p.substitute({"y": ParamPoly.const(1)}) == 3 * x - 3


def test_solver_kernel_and_solve():
    m = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    s = LinearSolver(m)
    assert s.rank == 2
    (k,) = s.kernel()
    assert m.matvec(k) == [0, 0, 0]
    x = s.solve([1, 2, 1])
    assert m.matvec(x) == [1, 2, 1]
    assert s.solve([1, 0, 0]) is None


@settings(derandomize=True, max_examples=30)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_nullity(rows):
    m = SparseMatrix.from_dense(rows, ncols=4)
    s = LinearSolver(m)
    assert s.rank + len(s.kernel()) == 4
    for v in s.kernel():
        assert all(c == 0 for c in m.matvec(v))
