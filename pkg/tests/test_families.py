from fractions import Fraction

import pytest

from imprimitive.curves import WeierstrassCurve, isomorphisms
from imprimitive.families import (
    BadParameter,
    cm3,
    cm3_isogeny,
    cube3,
    deuring3,
    family,
    registry,
    registry_entry,
    tate5,
    tate7,
    twist2,
    twist2_identities,
)
from imprimitive.algebra import factor


def test_twist2_point():
    inst = twist2(605, -3025, 1)
    assert inst.point.x == 1
    assert inst.point.y == Fraction(1 - 605 - 3025, 1 + 3025)
    assert not inst.flags["excluded"]
    assert not inst.flags["torsion"]
    for lam in (2, 3, Fraction(-1, 2)):
        assert twist2(605, -3025, lam).point.x == 1


def test_twist2_bad_parameters():
    with pytest.raises(BadParameter):
        twist2(605, -3025, Fraction(605, 2))
    with pytest.raises(BadParameter):
        twist2(0, 4, 2)


def test_twist2_proof_identities():
    ids = twist2_identities(605, -3025, 2)
    assert ids["roots_ok"] and ids["product_ok"] and ids["difference_ok"]
    # the +-Y forms as quoted do not hold; +-2Y do
    assert not ids["printed_product_ok"]
    assert not ids["printed_difference_ok"]


def test_deuring3_t2():
    inst = deuring3(2)
    assert inst.point.xy() == (Fraction(19, 4), Fraction(-99, 8))
    assert inst.source_point.xy() == (1, 2)


def test_deuring3_rejects_t0():
    with pytest.raises(BadParameter):
        deuring3(0)


def test_cube3():
    inst = cube3(2)
    assert inst.params["c"] == Fraction(-5, 2)
    assert inst.point.xy() == (Fraction(-1, 2), Fraction(3, 4))
    for t in (3, Fraction(1, 2), -4):
        i = cube3(t)
        assert i.curve.contains(*i.point.xy())


def test_cube3_t1_is_valid_but_torsion():
    inst = cube3(1)
    assert inst.params["c"] == -1
    assert inst.curve.disc != 0
    assert inst.flags["torsion"]


def test_cm3():
    inst = cm3(2)
    assert inst.curve == WeierstrassCurve(0, 0, 0, 0, -243)
    assert inst.point.xy() == (7, -10)
    zero = cm3(0)
    assert zero.point.xy() == (3, 0)
    assert zero.flags["torsion"]


def test_cm3_symbolic_identity():
    for s in range(-20, 21):
        s = Fraction(s, 3)
        assert (s * s + 3) ** 3 - 27 * (s * s - 1) ** 2 == s * s * (s * s - 9) ** 2


def test_cm3_isogeny_image():
    for s in (2, 5, Fraction(1, 2)):
        inst = cm3(s)
        phi = cm3_isogeny(s)
        assert phi(inst.source_point) == inst.point


def test_tate5():
    inst = tate5(5)
    assert inst.point.xy() == (Fraction(497, 16), Fraction(-73441, 64))
    assert inst.curve == WeierstrassCurve(16, 15, 15, 14550, 232860)
    with pytest.raises(BadParameter):
        tate5(1)


def test_tate5_accidents():
    three, four = tate5(3), tate5(4)
    assert three.flags["accident"] and three.flags["t_eq_minus_c"]
    # at t = 4, c = -8 so tc = -32 rather than 32
    assert four.flags["accident"] and four.flags["abs_tc_eq_32"]
    assert four.params["c"] * 4 == -32
    assert not tate5(5).flags["accident"]
    assert not tate5(6).flags["accident"]


def test_tate7():
    inst = tate7(3)
    assert inst.params["d"] == Fraction(4, 7)
    assert inst.point.xy() == (Fraction(286019, 490**2), Fraction(15951227, 490**3))
    with pytest.raises(BadParameter):
        tate7(1)


def test_registry():
    reg = registry()
    labels = [r.label for r in reg]
    assert labels[:3] == ["5835.c2", "20622.j1", "12100.j1"]
    assert len([r for r in reg if r.label.startswith("torsion-demo")]) == 2
    for r in reg[:3]:
        assert r.curve.contains(*r.point.xy())
    E = registry_entry("12100.j1").curve
    assert factor(abs(int(E.disc))) == {2: 4, 5: 9, 11: 6}


def test_registry_20622_minimal_model():
    r = registry_entry("20622.j1")
    E0 = WeierstrassCurve(*[Fraction(a) for a in r.flags["minimal_model"]])
    assert isomorphisms(r.curve, E0)
    assert E0.contains(*[Fraction(c) for c in r.flags["minimal_point"]])


def test_family_dispatch():
    assert family("deuring3", 2).point == deuring3(2).point
    with pytest.raises(KeyError):
        family("nope", 1)
