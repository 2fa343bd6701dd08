from fractions import Fraction

import pytest

from l1coh.cochain import NotClosed, class_of, cohomology, differential_matrix, e, monomials, pentagonal


def test_differential_of_generators():
    assert e(3).d() == e(1, 2)
    assert e(4).d() == e(1, 3, coeff=2)
    assert e(5).d() == e(1, 4, coeff=3) + e(2, 3)


def test_wedge_sign_and_bar():
    assert e(2) ^ e(1) == -e(1, 2)
    assert e(1, 2).bar() == -e(1, 2)
    assert e(1).bar() == e(1)


@pytest.mark.parametrize("q,mu", [(1, 3), (2, 6), (2, 9), (3, 12), (3, 14)])
def test_d_squared(q, mu):
    a = differential_matrix(q, mu)
    b = differential_matrix(q + 1, mu)
    assert (b @ a).is_zero()


def test_pentagonal():
    assert [pentagonal(k, -1) for k in range(1, 5)] == [1, 5, 12, 22]
    assert [pentagonal(k, 1) for k in range(1, 5)] == [2, 7, 15, 26]


def test_betti_low_weights():
    dims = {(q, mu): cohomology(q, mu).dimension for q in (1, 2, 3) for mu in range(1, 16)}
    nonzero = sorted(k for k, v in dims.items() if v)
    assert nonzero == [(1, 1), (1, 2), (2, 5), (2, 7), (3, 12), (3, 15)]


def test_class_of():
    rep = cohomology(2, 5)
    assert rep.representatives == [e(1, 4)]
    assert class_of(e(2, 3), rep) == [Fraction(-3)]
    assert class_of(e(1, 2), cohomology(2, 3)) == []
    with pytest.raises(NotClosed):
        class_of(e(2, 4), cohomology(2, 6))


def test_monomials():
    assert monomials(2, 5) == ((1, 4), (2, 3))
