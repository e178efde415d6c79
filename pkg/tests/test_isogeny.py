from fractions import Fraction

import pytest

from tamagawa.abctriple import make_triple
from tamagawa.arith import BudgetExceeded
from tamagawa.curve import WeierstrassCurve, frey_curve, frey_model, is_isomorphic, minimal_model
from tamagawa.isogeny import (INFINITY, CurvePoint, add, enumerate_isogenous, isogeny_tree, multiply, order,
                              point, torsion_points, velu)
from tamagawa.localdata import global_data

FREY_189 = WeierstrassCurve(0, 7, 0, -8, 0)
HIGH_RECORD = WeierstrassCurve(1, 0, 0, -2713479277841926834110, -53674762419393192464788215315900)


def affine(group):
    return {(P.x, P.y) for P in group.points if not P.is_infinity}


def test_group_law():
    E = WeierstrassCurve(0, 0, 0, 0, 1)
    P = point(E, 2, 3)
    assert order(E, P) == 6
    assert multiply(E, P, 3) == CurvePoint(Fraction(-1), Fraction(0))
    assert add(E, P, multiply(E, P, 5)) == INFINITY
    with pytest.raises(ValueError):
        point(E, 1, 1)


def test_torsion_examples():
    t = make_triple(1, 8, 9)
    E = frey_curve(t)
    tors = torsion_points(E)
    assert {(0, 0), (1, 0), (-8, 0)} <= affine(tors)
    tors = torsion_points(WeierstrassCurve(0, 0, 0, 0, 1))
    assert tors.order == 6 and tors.structure == (6,)
    orders = dict(zip(tors.points, tors.orders))
    assert orders[CurvePoint(Fraction(2), Fraction(3))] == 6
    assert orders[CurvePoint(Fraction(-1), Fraction(0))] == 2
    tors = torsion_points(WeierstrassCurve(0, -14, 0, 81, 0))
    assert [P for P, n in zip(tors.points, tors.orders) if n == 2] == [CurvePoint(Fraction(0), Fraction(0))]


def test_torsion_structure_of_frey_189():
    tors = torsion_points(FREY_189)
    assert tors.structure == (2, 4)
    assert affine(tors) == {(-8, 0), (0, 0), (1, 0), (-2, 6), (-2, -6), (4, 12), (4, -12)}
    assert tors.points[0] == INFINITY


def test_velu_examples():
    assert velu(FREY_189, INFINITY).codomain == FREY_189
    step = velu(FREY_189, point(FREY_189, 0, 0))
    assert step.degree == 2
    assert is_isomorphic(step.codomain, WeierstrassCurve(0, -14, 0, 81, 0))[0]
    assert global_data(step.codomain).N == global_data(FREY_189).N
    with pytest.raises(ValueError):
        velu(FREY_189, CurvePoint(Fraction(5), Fraction(1)))


def test_velu_rejects_non_torsion():
    E = WeierstrassCurve(0, 0, 1, -1, 0)  # 37a1, rank 1, trivial torsion
    with pytest.raises(ValueError):
        velu(E, point(E, 0, 0))


def test_enumerate_isogenous_frey_189():
    E = frey_curve(make_triple(1, 8, 9))
    out = enumerate_isogenous(E, 1)
    assert len(out) >= 4
    assert out == sorted(out, key=str)
    assert len({global_data(C).N for C in out}) == 1
    for i, C in enumerate(out):
        for D in out[i + 1:]:
            assert not is_isomorphic(C, D)[0]


def test_enumerate_isogenous_high_quality_record():
    t = make_triple(22771715409, 348972425216, 371744140625)
    tree = isogeny_tree(frey_curve(t, -1), 1)
    labels = {ic.curve: ic.label for ic in tree}
    assert HIGH_RECORD in labels
    assert labels[HIGH_RECORD] == "1"  # the twisted Frey curve itself, minimized


def test_isogeny_tree_budget():
    with pytest.raises(BudgetExceeded):
        isogeny_tree(FREY_189, 2, budget=3)
    with pytest.raises(ValueError):
        isogeny_tree(FREY_189, 4)


def test_isogeny_tree_depth_two_contains_depth_one():
    one = {ic.curve for ic in isogeny_tree(FREY_189, 1)}
    two = isogeny_tree(FREY_189, 2)
    assert one <= {ic.curve for ic in two}
    assert all(len(ic.path) <= 2 for ic in two)


def test_against_pari_fixture(isogeny_rows):
    assert len(isogeny_rows) == 200
    for E, n, structure, codomains in isogeny_rows:
        tors = torsion_points(E)
        assert tors.order == n, E
        expected = tuple(sorted((int(x) for x in structure.split("x")), key=int)) if "x" in structure else (n,)
        if n == 1:
            expected = ()
        assert tors.structure == expected, E
        for P, k in zip(tors.points, tors.orders):
            assert multiply(E, P, k) == INFINITY and (k == 1 or order(E, P) == k)
        # the fixture lists E/<O> as the minimal model of E
        got = sorted({str(minimal_model(velu(E, P).codomain)[0]) for P in tors.points})
        assert got == codomains, E
