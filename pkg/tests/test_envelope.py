
import pytest

from l1coh.envelope import (
    UEAElement,
    UnsupportedPQ,
    bsa_coefficient,
    bsa_coefficient_closed,
    bsa_operator,
    bsa_operator_by_compositions,
    compositions,
    multiply,
    normal_order,
)
from l1coh.exactnum import LaurentPoly


def test_normal_order_commutator():
    # e1 e2 = e2 e1 + [e1, e2] = e2 e1 + e3
    x = normal_order([((1, 2), 1)])
    assert x == UEAElement({(2, 1): 1, (3,): 1})


def test_multiply_associative():
    a, b, c = UEAElement.gen(1), UEAElement.gen(2), UEAElement({(3, 1): 2})
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_compositions_count():
    assert sum(1 for _ in compositions(6)) == 32


@pytest.mark.parametrize("r", range(1, 8))
def test_coefficient_closed_form(r):
    for comp in compositions(r):
        assert bsa_coefficient(r, comp) == bsa_coefficient_closed(r, comp)


def test_s21():
    t = LaurentPoly.t()
    assert bsa_operator(2, 1) == UEAElement({(1, 1): 1, (2,): t.__class__({1: 1})})


@pytest.mark.parametrize("p,q", [(3, 1), (1, 3), (4, 1), (1, 4)])
def test_recursive_matches_composition_sum(p, q):
    assert bsa_operator(p, q) == bsa_operator_by_compositions(p, q)


def test_unsupported():
    with pytest.raises(UnsupportedPQ):
        bsa_operator(2, 2)
