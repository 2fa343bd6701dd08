from fractions import Fraction

import pytest

from l1coh.envelope import bsa_operator
from l1coh.verma import act, as_operator, central_charge, conformal_weight, singular_vector

T_VALUES = [Fraction(-3, 2), Fraction(2), Fraction(1, 3)]


def test_kac_parametrization():
    assert central_charge(Fraction(-3, 2)) == 0
    assert conformal_weight(1, 1, 5) == 0


@pytest.mark.parametrize("t", T_VALUES)
@pytest.mark.parametrize("p,q", [(1, 2), (2, 1), (3, 1), (1, 3), (2, 2), (3, 2)])
def test_singular_vector_is_annihilated(p, q, t):
    w = singular_vector(p, q, t)
    assert w.level == p * q
    assert w.coeff((1,) * (p * q)) == 1
    # e_1, e_2 build the module; e_{-1}, e_{-2} generate the positive part
    assert act(-1, w).is_zero() and act(-2, w).is_zero()


@pytest.mark.parametrize("t", T_VALUES)
@pytest.mark.parametrize("p,q", [(2, 1), (1, 2), (4, 1), (1, 4)])
def test_matches_closed_formula(p, q, t):
    b = bsa_operator(p, q).specialize(t)
    b = b.scale(1 / b.coeff((1,) * (p * q)))
    assert as_operator(singular_vector(p, q, t)) == b
