from fractions import Fraction

import pytest

from l1coh.checks import g_label
from l1coh.cochain import Cochain, class_of, cohomology, e
from l1coh.exactnum import ParamPoly
from l1coh.massey import (
    FormalConnection,
    NotCentral,
    SingularC,
    alpha_analysis,
    class_coordinates,
    gauge_transform,
    mc_residual,
    product_set,
    rational_roots,
    related_cocycle,
    rigidity_check,
    solve_defining_system,
    spectral_check,
)
from l1coh.threadmod import MtildeNonzero

G2P = g_label(2, "+")


def test_triple_product_value():
    v = product_set([e(1), e(2), e(2)])
    assert v.status == "DEFINED" and v.kind == "point"
    assert v.axes == [(5, 0)] and v.point == [3]
    assert not v.trivial


def test_trivial_product_contains_zero():
    v = product_set([e(1), e(1), e(1)])
    assert v.trivial


def test_undefined_product():
    # <e1, e2, e2> is nonzero, so the 4-fold product has no defining system
    v = product_set([e(1), e(2), e(2), e(2)])
    assert v.status == "UNDEFINED"
    assert "a(1,3)" in v.reason


def test_certificate_is_a_defining_system():
    v = product_set([e(1), e(2), e(2)])
    c = mc_residual(v.certificate)
    assert class_of(c, cohomology(2, 5)) == [-3]


def test_mc_residual_detects_non_central():
    A = FormalConnection(3, {(1, 1): e(1), (2, 2): e(2), (3, 3): e(2), (1, 2): Cochain.zero(1), (2, 3): e(4)})
    with pytest.raises(NotCentral):
        mc_residual(A)


def test_five_fold_affine_line():
    v = product_set([e(1), e(2), e(1), e(1), e(2)])
    assert v.axes == [(5, 0), (7, 0)]
    assert v.point == [0, Fraction(-15, 2)] and v.directions == [[1, 0]]
    assert not v.trivial and not v.single_valued


@pytest.mark.parametrize("m,value", [(1, Fraction(120, 11)), (2, Fraction(-336, 55))])
def test_k2_family_points(m, value):
    inputs = [e(1)] * m + [e(2)] + [e(1)] * (3 - m) + [G2P]
    v = product_set(inputs)
    assert v.kind == "point" and v.point == [value]
    rig = rigidity_check(inputs)
    assert rig.nontrivial and rig.single_valued


def test_spectral_match():
    sv = spectral_check(MtildeNonzero(-3, 2), G2P)
    assert sv.page == 5 and all(sv.vanishing) and sv.matches and sv.nonzero


def test_gauge_scaling():
    ds = solve_defining_system([e(1), e(2), e(2)], freedom=False)
    C = [[Fraction(v) if r == c else Fraction(0) for c in range(4)] for r, v in enumerate((30, 6, 2, 1))]
    C[2][0] = Fraction(5)
    B = gauge_transform(ds.connection, C)
    before = class_coordinates(related_cocycle(ds.connection))[(5, 0)]
    assert class_coordinates(related_cocycle(B))[(5, 0)] == 30 * before
    C[1][1] = Fraction(0)
    with pytest.raises(SingularC):
        gauge_transform(ds.connection, C)


def test_alpha_family_triple():
    rep = alpha_analysis(3, e(2))
    assert rep.defined_for is None
    assert rep.trivial_for == [Fraction(1, 6)]


def test_alpha_family_with_g2():
    rep = alpha_analysis(5, G2P)
    assert sorted(rep.trivial_for) == [Fraction(1, 24), Fraction(1, 6)]


def test_rational_roots():
    a = ParamPoly.var("a")
    p = (a * 6 - 1) * (a * 24 - 1)
    assert sorted(rational_roots(p, "a")) == [Fraction(1, 24), Fraction(1, 6)]
