from fractions import Fraction

import pytest

from l1coh.envelope import bsa_operator
from l1coh.massey import mu_matrix
from l1coh.threadmod import (
    A,
    F,
    Mtilde,
    MtildeNonzero,
    NotThread,
    connection_of,
    f_poly,
    normalized_b,
    sigma,
    uniqueness_solve,
)


def _law_holds(spec, idx, imax=4):
    for j in idx:
        for a in range(1, imax + 1):
            for b in range(a + 1, imax + 1):
                lhs = spec.act(a, j + b) * spec.act(b, j) - spec.act(b, j + a) * spec.act(a, j)
                if lhs != (b - a) * spec.act(a + b, j):
                    return False
    return True


@pytest.mark.parametrize(
    "spec",
    [F(Fraction(1, 2), 3), F(-1, Fraction(2, 3)), Mtilde(), MtildeNonzero()],
    ids=["F(1/2,3)", "F(-1,2/3)", "Mtilde", "MtildeNonzero"],
)
def test_representation_law(spec):
    assert _law_holds(spec, range(-8, 8))


def test_connection_is_flat():
    for spec in (MtildeNonzero(-3, 4), A(Fraction(1, 6), 0, 5), F(1, 2, -2, 4)):
        A_ = connection_of(spec)
        assert all(x.is_zero() for row in mu_matrix(A_) for x in row)


def test_lemma_instance():
    assert sigma(Mtilde(), bsa_operator(3, 1), -1) == f_poly(-1, 3)
    # the roots of F_{-1,3}: t = -(i + j)/(i(p - i)) for i = 1, 2
    assert f_poly(-1, 3).evaluate(Fraction(0)) == 0
    assert f_poly(-1, 3).evaluate(Fraction(-1, 2)) == 0


def test_sigma_requires_a_thread():
    with pytest.raises(NotThread):
        sigma(Mtilde(), bsa_operator(2, 1) + bsa_operator(3, 1), 0)


def test_uniqueness_recurrence():
    b = uniqueness_solve(-6, 6)
    for j, v in b.items():
        if j not in (-2, -1, 0):
            assert v == Fraction(6, j + 1)
    assert (b[-2], b[-1], b[0]) == (0, 1, 1)


def test_uniqueness_needs_room():
    with pytest.raises(ValueError):
        uniqueness_solve(-3, 5)


def test_normalized_b_of_mtilde():
    b = normalized_b(MtildeNonzero(-6, 6))
    assert b[-1] == 1
    assert b[2] == 2 and b[-4] == -2
