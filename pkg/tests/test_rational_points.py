from fractions import Fraction

import pytest

from imprimitive.curves import WeierstrassCurve
from imprimitive.families import registry_entry
from imprimitive.rational_points import (
    divide_point,
    full_ell_torsion_rational,
    is_globally_ell_primitive,
    point_order,
    rational_torsion_points,
    torsion_subgroup,
)

E12100 = WeierstrassCurve(0, 605, 0, -3025, 0)
P12100 = E12100.point(Fraction(-13475, 36), Fraction(1249325, 216))
# rank one curve y^2 + y = x^3 - x with generator (0, 0)
E37 = WeierstrassCurve(0, 0, 1, -1, 0)
G37 = E37.point(0, 0)


def test_point_order_infinite():
    assert not point_order(E12100, P12100).is_torsion
    assert not point_order(E37, G37).is_torsion


def test_point_order_of_torsion():
    E = WeierstrassCurve(0, 0, 0, 0, 1)
    assert point_order(E, E.point(2, 3)).order == 6
    assert point_order(E, E.point(-1, 0)).order == 2


@pytest.mark.parametrize(
    "ainvs, structure",
    [
        ((0, 0, 0, -1, 0), (2, 2)),
        ((0, 0, 0, 0, 1), (6,)),
        ((0, 605, 0, -3025, 0), (2,)),
        ((0, 0, 1, -1, 0), (1,)),
        ((1, 0, 1, -19, 26), (2, 6)),
        ((0, -1, 1, 0, 0), (5,)),
    ],
)
def test_torsion_subgroup(ainvs, structure):
    T = torsion_subgroup(WeierstrassCurve(*ainvs))
    if structure == (1,):
        assert T.size == 1
    else:
        assert T.structure == structure


def test_torsion_generator_12100():
    T = torsion_subgroup(E12100)
    assert T.generators == (E12100.point(0, 0),)


def test_divide_infinity_gives_torsion():
    E = WeierstrassCurve(0, 0, 0, -1, 0)
    div = divide_point(E, E.O, 2)
    assert {P for P in div.points if not P.is_zero()} == {E.point(0, 0), E.point(1, 0), E.point(-1, 0)}


def test_divide_5835_point_by_5_is_empty():
    inst = registry_entry("5835.c2")
    assert not divide_point(inst.curve, inst.point, 5)
    assert is_globally_ell_primitive(inst.curve, inst.point, 5)


def test_divide_multiples():
    for ell in (2, 3):
        R = E37.mul(ell, E37.add(G37, G37))
        assert E37.add(G37, G37) in divide_point(E37, R, ell).points
        assert not is_globally_ell_primitive(E37, E37.mul(ell, G37), ell)


def test_12100_point_is_2_primitive():
    assert is_globally_ell_primitive(E12100, P12100, 2)


def test_full_torsion():
    assert full_ell_torsion_rational(WeierstrassCurve(0, 0, 0, -1, 0), 2)[0]
    assert not full_ell_torsion_rational(E12100, 2)[0]
    assert not full_ell_torsion_rational(WeierstrassCurve(0, -1, 1, 0, 0), 5)[0]


def test_rational_torsion_points():
    E = WeierstrassCurve(0, -1, 1, 0, 0)
    assert len(rational_torsion_points(E, 5)) == 4
    assert rational_torsion_points(E, 3) == []
