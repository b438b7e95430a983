from fractions import Fraction

import pytest

from imprimitive.curves import (
    ModelMap,
    NonCurve,
    WeierstrassCurve,
    integral_model,
    isomorphisms,
    quadratic_twist_00,
    transform,
)
from imprimitive.families import E0_20622, P0_20622, tate5_curve, tate7


def _random_rational_point(E, rng, tries=2000):
    for _ in range(tries):
        x = Fraction(rng.randint(-40, 40), rng.choice([1, 4, 9]))
        pts = E.lift_x(x)
        if pts:
            return pts[0]
    raise AssertionError("no point found")


def test_discriminant_deuring():
    E = WeierstrassCurve(1, 0, 2, 0, 0)
    assert E.disc == -424


def test_discriminant_tate5():
    c = -15
    assert tate5_curve(c).disc == c**5 * (c * c - 11 * c - 1)
    assert tate5_curve(c).disc == (-15) ** 5 * 389


def test_singular_curve_rejected():
    with pytest.raises(NonCurve):
        WeierstrassCurve(0, 0, 0, 0, 0)


def test_identity_law():
    E = WeierstrassCurve(0, 0, 0, -2, 1)
    P = E.point(0, 1)
    assert E.add(P, E.O) == P
    assert E.add(E.O, P) == P
    assert E.add(P, E.neg(P)).is_zero()


def test_group_law_associative(rng):
    E = WeierstrassCurve(1, -1, 1, -3, 4)
    for p in (101, 103):
        Ep = E.reduce_mod(p)
        pts = [Ep.random_point(rng) for _ in range(8)]
        for P in pts[:4]:
            for Q in pts[4:]:
                R = pts[(pts.index(P) + 1) % 8]
                assert Ep.add(Ep.add(P, Q), R) == Ep.add(P, Ep.add(Q, R))


def test_mul_matches_repeated_addition():
    E = WeierstrassCurve(0, 0, 1, -1, 0)
    P = E.point(0, 0)
    acc = E.O
    for n in range(1, 9):
        acc = E.add(acc, P)
        assert E.mul(n, P) == acc
    assert E.mul(-3, P) == E.neg(E.mul(3, P))


def test_order_six_point_on_x3_plus_1():
    E = WeierstrassCurve(0, 0, 0, 0, 1)
    P = E.point(2, 3)
    assert E.mul(6, P).is_zero()
    assert all(not E.mul(k, P).is_zero() for k in range(1, 6))


def test_quoted_order4_point_is_not_on_its_curve():
    # (1, -3) on y^2 = x(x^2 - 7x + 3): 9 versus 1 - 7 + 3 = -3
    E = WeierstrassCurve(0, -7, 0, 3, 0)
    assert not E.contains(1, -3)


def test_quoted_order6_point_has_infinite_order():
    E = WeierstrassCurve(0, 3, 0, -3, 0)
    P = E.point(1, 1)
    seen = E.O
    for k in range(1, 13):
        seen = E.add(seen, P)
        assert not seen.is_zero()


def test_division_polynomial_examples():
    assert str(WeierstrassCurve(0, 0, 0, 0, 1).division_polynomial(3).torsion_x_poly()) == "Poly(3x^4 + 12x)"
    E = WeierstrassCurve(0, -7, 0, 3, 0)
    psi2sq = E.two_torsion_poly()
    assert str(psi2sq) == "Poly(4x^3 - 28x^2 + 12x)"
    from imprimitive.algebra import rational_roots

    assert rational_roots(psi2sq) == [0]


def test_multiplication_x_map_matches_mul(rng):
    E = WeierstrassCurve(0, 1, 1, -2, 0)
    P = E.point(0, 0)
    for m in (2, 3, 4, 5):
        num, den = E.multiplication_x_map(m)
        Q = E.mul(m, P)
        assert num(P.x) / den(P.x) == Q.x


def test_scaling_map():
    E = WeierstrassCurve(0, 0, 0, -1, 0)
    mp = ModelMap.scaling(2)
    E2, move = transform(E, mp)
    assert E2 == WeierstrassCurve(0, 0, 0, -16, 0)
    assert move(E.point(-1, 0)) == E2.point(-4, 0)


def test_identity_map():
    E = WeierstrassCurve(1, 2, 3, 4, 5)
    E2, move = transform(E, ModelMap.identity())
    assert E2 == E
    P = E.lift_x(Fraction(0))
    for Q in P:
        assert move(Q) == Q


def test_model_map_roundtrip(rng):
    E = WeierstrassCurve(1, -1, 0, -7, 6)
    mp = ModelMap(Fraction(3, 2), Fraction(1, 3), Fraction(-2), Fraction(5, 7))
    E2 = mp.apply(E)
    assert E2.j == E.j
    P = _random_rational_point(E, rng)
    assert mp.inverse().push(mp.push(P, E2), E) == P
    # transport respects the group law
    assert mp.push(E.mul(3, P), E2) == E2.mul(3, mp.push(P, E2))


def test_tate7_model_to_displayed_minimal_model():
    inst = tate7(3)
    E0 = WeierstrassCurve(*E0_20622)
    maps = isomorphisms(inst.curve, E0)
    assert maps
    mp = max(maps, key=lambda m: m.u)
    P0 = mp.push(inst.point, E0)
    assert P0.xy() == P0_20622


def test_quadratic_twist():
    assert quadratic_twist_00(3, -2, 1) == WeierstrassCurve(0, 3, 0, -2, 0)
    assert quadratic_twist_00(605, -3025, 1) == WeierstrassCurve(0, 605, 0, -3025, 0)
    E = quadratic_twist_00(quadratic_twist_00(3, -2, 5).a2, quadratic_twist_00(3, -2, 5).a4, 5)
    assert E.j == WeierstrassCurve(0, 3, 0, -2, 0).j
    assert isomorphisms(E, WeierstrassCurve(0, 3, 0, -2, 0))


def test_integral_model():
    E = WeierstrassCurve(Fraction(1, 2), 0, Fraction(1, 3), Fraction(-5, 4), Fraction(1, 7))
    Ei, mp = integral_model(E)
    assert all(Fraction(a).denominator == 1 for a in Ei.ainvs)
    assert Ei.j == E.j
    assert mp.apply(E) == Ei
