import pytest

from imprimitive.classify import classify, condition_A, condition_B, condition_C
from imprimitive.curves import WeierstrassCurve
from imprimitive.families import cm3, cube3, deuring3, registry_entry, twist2
from imprimitive.rational_points import TorsionPointError
from imprimitive.scans import consistency_check, scan_elliptic_index

# y^2 + xy = x^3 - x^2 - 2x: rational 2-torsion at (0, 0), and Q = (-1, 1)
# of infinite order
E2 = WeierstrassCurve(1, -1, 0, -2, 0)


def test_5835_classification():
    r = registry_entry("5835.c2")
    c = classify(r.curve, r.point, 5)
    assert (c.condA, c.condB, c.condC) == (False, False, True)
    assert c.nontrivial
    assert c.witness_C.isogeny.domain.j == c.witness_C.preimage.curve.j
    assert c.witness_C.isogeny(c.witness_C.preimage) == r.point
    assert not condition_A(r.curve, r.point, 5)[0]


def test_12100_classification():
    r = registry_entry("12100.j1")
    for ell in (2, 3):
        c = classify(r.curve, r.point, ell)
        assert not c.locally_ell_imprimitive
    assert not condition_B(r.curve, 2)[0]
    assert not condition_A(r.curve, r.point, 2)[0]


def test_condition_B():
    assert condition_B(WeierstrassCurve(0, 0, 0, -1, 0), 2)[0]
    assert not condition_B(WeierstrassCurve(0, 0, 0, -1, 0), 5)[0]


def test_trivial_A_case():
    assert E2.contains(-1, 1)
    Q = E2.point(-1, 1)
    c = classify(E2, E2.mul(2, Q), 2)
    assert c.condA
    assert not c.nontrivial


@pytest.mark.parametrize("inst", [deuring3(2), deuring3(5), cube3(3), cm3(5), twist2(605, -3025, 3)], ids=str)
def test_condition_C_on_families(inst):
    ok, w = condition_C(inst.curve, inst.point, inst.ell)
    assert ok
    assert w.isogeny(w.preimage) == inst.point


def test_torsion_point_rejected():
    E = WeierstrassCurve(0, 0, 0, 0, 1)
    with pytest.raises(TorsionPointError):
        classify(E, E.point(2, 3), 3)


def test_consistency_5835():
    r = registry_entry("5835.c2")
    c = classify(r.curve, r.point, 5)
    rep = scan_elliptic_index(r.curve, r.point, 5, 2000)
    assert consistency_check(c, rep).status == "consistent"


def test_consistency_12100_finds_witness():
    r = registry_entry("12100.j1")
    c = classify(r.curve, r.point, 2)
    rep = scan_elliptic_index(r.curve, r.point, 2, 1000)
    v = consistency_check(c, rep)
    assert v.status == "consistent"
    assert v.witness == 7


def test_corrupted_flag_is_hard_failure():
    r = registry_entry("12100.j1")
    c = classify(r.curve, r.point, 2)
    rep = scan_elliptic_index(r.curve, r.point, 2, 1000)
    c.condB, c.reason_B = True, "corrupted"
    assert consistency_check(c, rep).status == "hard-failure"
