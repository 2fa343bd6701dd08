from fractions import Fraction

import pytest

from l1coh.cochain import TrivialModule
from l1coh.resolution import S_op, cross_validate, gen_weights, stage_labels, thread_cohomology, verify_exactness
from l1coh.threadmod import A, F, MtildeNonzero


def test_generator_weights():
    assert gen_weights(0) == (0,)
    assert gen_weights(2) == (5, 7)


def test_stage_labels():
    assert stage_labels(1) == [[(1, 1, 1)], [(1, 1, 2)]]
    assert stage_labels(3) == [[(1, 1, 7), (-1, 5, 1)], [(1, 5, 2), (-1, 1, 8)]]


@pytest.mark.parametrize("k", [1, 2])
def test_exactness(k):
    assert verify_exactness(k)


def test_exactness_fails_away_from_the_resolution_point():
    assert not verify_exactness(1, Fraction(1))


def test_s_op_closed_formula_vs_verma():
    assert S_op(2, 1).weight == 2 and S_op(2, 2).weight == 4


def test_trivial_module_matches_betti_numbers():
    dims = thread_cohomology(TrivialModule(), 0, 3).dims
    assert dims == {0: 1, 1: 0, 2: 0, 3: 0}


@pytest.mark.parametrize(
    "spec", [A(Fraction(1, 6), 0, 6), F(1, 2, -3, 3), MtildeNonzero(-3, 4)], ids=["A", "F", "Mtilde*"]
)
def test_cross_validation(spec):
    for s in range(-8, 3):
        table = cross_validate(spec, s, [0, 1, 2])
        assert all(a == b for a, b in table.values())
