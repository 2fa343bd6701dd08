from fractions import Fraction

import pytest

from l1coh.liealg import L1, OutOfWindow, bracket, virasoro, witt


def test_l1_bracket():
    r = bracket(L1(10), 2, 5)
    assert r.coefficient(7) == 3 and r.central == 0


def test_l1_truncation():
    assert bracket(L1(6), 3, 4).is_zero()
    with pytest.raises(OutOfWindow):
        bracket(L1(6), 0, 1)


def test_antisymmetry():
    kind = witt(-4, 4)
    for i in kind.basis():
        for j in kind.basis():
            if not kind.contains(i + j):
                continue
            a, b = bracket(kind, i, j), bracket(kind, j, i)
            assert a.coefficient(i + j) == -b.coefficient(i + j)


def test_virasoro_cocycle():
    r = bracket(virasoro(-3, 3), 2, -2)
    assert r.coefficient(0) == -4
    # with [e_i, e_j] = (j - i) e_{i+j} the cocycle is (j^3 - j)/12
    assert r.central == Fraction((-2) ** 3 + 2, 12)
