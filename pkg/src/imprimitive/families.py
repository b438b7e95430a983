"""Parametrized curve/point constructions and the registry of named examples.

Every factory returns a FamilyInstance (E, P, l) with P on E, checked with
exact arithmetic. Parameters in a family's bad set raise BadParameter with
the reason.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Q, is_rational_square
from .curves import ECPoint, NonCurve, WeierstrassCurve, isomorphisms, quadratic_twist_00
from .isogeny import KernelSubgroup, three_isogeny_deuring, velu
from .rational_points import divide_point, point_order


class BadParameter(ValueError):
    pass


@dataclass
class FamilyInstance:
    family: str
    params: dict
    curve: WeierstrassCurve
    point: ECPoint
    ell: int | tuple
    expected: str | None = None
    label: str | None = None
    flags: dict = field(default_factory=dict)
    # the isogeny phi: E' -> E with phi(P') = P, when the family has one
    source_curve: WeierstrassCurve | None = None
    source_point: ECPoint | None = None

    @property
    def ells(self) -> tuple:
        return self.ell if isinstance(self.ell, tuple) else (self.ell,)

    def describe(self) -> dict:
        return {
            "family": self.family,
            "label": self.label,
            "params": {k: str(v) for k, v in self.params.items()},
            "curve": [str(a) for a in self.curve.ainvs],
            "point": [str(c) for c in self.point.xy()] if not self.point.is_zero() else None,
            "ell": list(self.ells),
            "expected": self.expected,
            "flags": {k: v for k, v in self.flags.items()},
        }


def _curve(*ainvs) -> WeierstrassCurve:
    try:
        return WeierstrassCurve(*ainvs)
    except NonCurve as exc:
        raise BadParameter(f"singular curve: {exc}") from None


# -- l = 2 -------------------------------------------------------------------


def twist2(a, b, lam) -> FamilyInstance:
    """The twist E_D of y^2 = x(x^2 + ax + b) carrying the point P = (1, Y)."""
    a, b, lam = Q(a), Q(b), Q(lam)
    d = a * a - 4 * b
    if b == 0 or d == 0:
        raise BadParameter("base curve singular: need b != 0 and a^2 - 4b != 0")
    if lam == a / 2:
        raise BadParameter("lambda = a/2 gives D = 0")
    if lam * lam == b:
        raise BadParameter("lambda^2 = b: D is undefined")
    D = (a - 2 * lam) / (lam * lam - b)
    Y = (lam * lam - a * lam + b) / (lam * lam - b)
    E = quadratic_twist_00(a, b, D)
    P = E.point(1, Y)
    w = lam * lam - b
    flags = {
        "lambda2_minus_b_square": is_rational_square(w),
        "lambda2_minus_b_d_square": is_rational_square(w / d),
        "d_square": is_rational_square(d),
    }
    flags["excluded"] = flags["lambda2_minus_b_square"] or flags["lambda2_minus_b_d_square"]
    flags["torsion"] = point_order(E, P).is_torsion
    return FamilyInstance("twist2", {"a": a, "b": b, "lambda": lam}, E, P, 2, flags=flags)


def twist2_identities(a, b, lam) -> dict:
    """The two x-coordinates u1, u2 of the halves of P on the isogenous curve.

    They are the roots of (u - aD - 2)^2 = 4Y^2, so u1, u2 = aD + 2 +- 2Y with
    u1 u2 = d D^2 and aD + 2 - 2Y = d/(lambda^2 - b). The "printed" entries
    evaluate the same identities with +-Y in place of +-2Y.
    """
    a, b, lam = Q(a), Q(b), Q(lam)
    d = a * a - 4 * b
    D = (a - 2 * lam) / (lam * lam - b)
    Y = (lam * lam - a * lam + b) / (lam * lam - b)
    u1, u2 = a * D + 2 + 2 * Y, a * D + 2 - 2 * Y
    p1, p2 = a * D + 2 + Y, a * D + 2 - Y
    return {
        "u1": u1,
        "u2": u2,
        "roots_ok": all(u * u - 2 * a * D * u - 4 * u + d * D * D == 0 for u in (u1, u2)),
        "product_ok": u1 * u2 == d * D * D,
        "difference_ok": u2 == d / (lam * lam - b),
        "printed_product_ok": p1 * p2 == d * D * D,
        "printed_difference_ok": p2 == d / (lam * lam - b),
    }


# -- l = 3 -------------------------------------------------------------------


def b_of_t(t) -> Fraction:
    t = Q(t)
    return (1 - t - t * t) / t


def deuring3(t) -> FamilyInstance:
    """E_b with b = (1 - t - t^2)/t and the image of (1, t) under the 3-isogeny."""
    t = Q(t)
    if t == 0:
        raise BadParameter("t = 0")
    b = b_of_t(t)
    if b == 0 or b == Fraction(1, 27):
        raise BadParameter(f"b(t) = {b} makes the curve singular")
    E1, E, phi = three_isogeny_deuring(1, b)
    P1 = E1.point(1, t)
    x = ((t * t + t) * (t * t - 1) + 1) / (t * t)
    y = (1 - t * t) * (t**4 + 2 * t**3 + t - 1) / t**3
    P = E.point(x, y)
    if phi(P1) != P:
        raise ArithmeticError("displayed point disagrees with the 3-isogeny image")
    flags = {"torsion": point_order(E, P).is_torsion}
    return FamilyInstance("deuring3", {"t": t, "b": b}, E, P, 3, flags=flags, source_curve=E1, source_point=P1)


def cube3(t) -> FamilyInstance:
    """y^2 + cxy + y = x^3 - 5cx - (c^3 + 7), c = (1 - t - t^2)/t, P = image of (1, t)."""
    t = Q(t)
    if t == 0:
        raise BadParameter("t = 0")
    c = (-t * t - t + 1) / t
    try:
        E1, E, phi = three_isogeny_deuring(c, 1)
    except NonCurve as exc:
        raise BadParameter(f"singular curve: {exc}") from None
    P1 = E1.point(1, t)
    P = E.point((-t * t + t + 1) / t, (t * t - 1) / (t * t))
    if phi(P1) != P:
        raise ArithmeticError("displayed point disagrees with the 3-isogeny image")
    flags = {"torsion": point_order(E, P).is_torsion}
    return FamilyInstance("cube3", {"t": t, "c": c}, E, P, 3, flags=flags, source_curve=E1, source_point=P1)


def cm3(s) -> FamilyInstance:
    """E_s: y^2 = x^3 - 27(s^2 - 1)^2 with P_s = (s^2 + 3, s(s^2 - 9))."""
    s = Q(s)
    if s * s == 1:
        raise BadParameter("s = +-1 makes the curve singular")
    c = s * s - 1
    E = _curve(0, 0, 0, 0, -27 * c * c)
    P = E.point(s * s + 3, s * (s * s - 9))
    E1 = _curve(0, 0, 0, 0, c * c)
    P1 = E1.point(c, s * c)
    flags = {"torsion": point_order(E, P).is_torsion}
    return FamilyInstance("cm3", {"s": s}, E, P, 3, flags=flags, source_curve=E1, source_point=P1)


def cm3_isogeny(s):
    """Velu's 3-isogeny from E'_s with kernel <(0, s^2 - 1)>, moved onto E_s."""
    inst = cm3(s)
    E1 = inst.source_curve
    c = Q(s) ** 2 - 1
    phi = velu(E1, KernelSubgroup.from_point(E1, E1.point(0, c), 3))
    return _onto(phi, inst.curve)


def _onto(phi, E: WeierstrassCurve):
    """phi followed by the isomorphism to E with positive u."""
    maps = isomorphisms(phi.codomain, E)
    if not maps:
        raise ArithmeticError("codomain is not isomorphic to the target model")
    mp = max(maps, key=lambda m: m.u)
    return phi.then_model(mp)


# -- l = 5 -------------------------------------------------------------------


def tate5_curve(c) -> WeierstrassCurve:
    """E': y^2 + (1 - c)xy - cy = x^3 - cx^2, with (0, 0) of order 5."""
    c = Q(c)
    return _curve(1 - c, -c, -c, 0, 0)


def tate5_quotient(c) -> WeierstrassCurve:
    c = Q(c)
    return _curve(
        1 - c,
        -c,
        -c,
        -5 * c * (c * c + 2 * c - 1),
        -c * (c**4 + 10 * c**3 - 5 * c * c + 15 * c - 1),
    )


def tate5_point(t) -> tuple[Fraction, Fraction]:
    t = Q(t)
    x = (2 * t**4 - 8 * t**3 + 11 * t**2 - 6 * t + 2) / (t - 1) ** 2
    y = -(t**8 - 7 * t**7 + 19 * t**6 - 23 * t**5 + 4 * t**4 + 23 * t**3 - 31 * t**2 + 19 * t - 4) / (t - 1) ** 3
    return x, y


def tate5_isogeny(c):
    E1 = tate5_curve(c)
    phi = velu(E1, KernelSubgroup.from_point(E1, E1.point(0, 0), 5))
    return _onto(phi, tate5_quotient(c))


def tate5(t) -> FamilyInstance:
    t = Q(t)
    if t == 1:
        raise BadParameter("t = 1: P is the zero point (P' is 5-torsion)")
    c = t * (2 - t)
    if c == 0:
        raise BadParameter(f"t = {t}: c = 0 and the curve is singular")
    E1, E = tate5_curve(c), tate5_quotient(c)
    P1 = E1.point(t, t)
    P = E.point(*tate5_point(t))
    if tate5_isogeny(c)(P1) != P:
        raise ArithmeticError("displayed point disagrees with the Velu image")
    torsion = point_order(E, P).is_torsion
    flags = {
        "torsion": torsion,
        "accident": bool(divide_point(E, P, 5)) if not torsion else None,
        "t_eq_minus_c": t == -c,
        "abs_tc_eq_32": abs(t * c) == 32,
    }
    return FamilyInstance("tate5", {"t": t, "c": c}, E, P, 5, flags=flags, source_curve=E1, source_point=P1)


# -- l = 7 -------------------------------------------------------------------


def d_of_t(t) -> Fraction:
    t = Q(t)
    return (t + 1) / (t * t - t + 1)


def tate7_curve(d) -> WeierstrassCurve:
    """E': y^2 + (1 - c)xy - by = x^3 - bx^2 with c = d^2 - d, b = d^3 - d^2."""
    d = Q(d)
    c, b = d * d - d, d**3 - d * d
    return _curve(1 - c, -b, -b, 0, 0)


def tate7_quotient(d) -> WeierstrassCurve:
    d = Q(d)
    c, b = d * d - d, d**3 - d * d
    a4 = -5 * (2 * b * b + b * (c * c - 3 * c - 2) + c * (c * c + 4 * c + 1))
    a6 = (
        -b * b * (12 * c * c + c + 24)
        - 6 * b**3
        + b * (-(c**4) + 9 * c**3 + 46 * c * c + 24 * c + 2)
        - c * (c**4 + 16 * c**3 + 36 * c * c + 16 * c + 1)
    )
    return _curve(1 - c, -b, -b, a4, a6)


def tate7_isogeny(d):
    E1 = tate7_curve(d)
    phi = velu(E1, KernelSubgroup.from_point(E1, E1.point(0, 0), 7))
    return _onto(phi, tate7_quotient(d))


def tate7(t) -> FamilyInstance:
    t = Q(t)
    if t == 1:
        raise BadParameter("t = 1: P is the zero point (P' is 7-torsion)")
    d = d_of_t(t)
    E1 = tate7_curve(d)
    P1 = E1.point(d * d * t, d**3 * t)
    if P1 == E1.point(0, 0) or E1.mul(7, P1).is_zero():
        raise BadParameter(f"t = {t}: P' is 7-torsion")
    phi = tate7_isogeny(d)
    P = phi(P1)
    flags = {"torsion": P.is_zero() or point_order(phi.codomain, P).is_torsion}
    return FamilyInstance("tate7", {"t": t, "d": d}, phi.codomain, P, 7, flags=flags, source_curve=E1, source_point=P1)


FAMILIES = {
    "twist2": twist2,
    "deuring3": deuring3,
    "cube3": cube3,
    "cm3": cm3,
    "tate5": tate5,
    "tate7": tate7,
}


def family(name: str, *params) -> FamilyInstance:
    if name not in FAMILIES:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")
    return FAMILIES[name](*params)


# -- named examples ---------------------------------------------------------

# minimal model of the l = 7 example at t = 3, and its generator
E0_20622 = (1, 0, 0, -5455771, -5039899603)
P0_20622 = (Fraction(328219, 100), Fraction(109777927, 1000))


def model_20622():
    """(E, P3, E0, P0, u > 0 map E -> E0) for the l = 7 example."""
    inst = tate7(3)
    E0 = WeierstrassCurve(*E0_20622)
    mp = max(isomorphisms(inst.curve, E0), key=lambda m: m.u)
    return inst.curve, inst.point, E0, mp.push(inst.point, E0), mp


def registry() -> list[FamilyInstance]:
    out = []
    inst = tate5(5)
    inst.family, inst.label, inst.expected = "registry", "5835.c2", "nontrivial-C"
    out.append(inst)

    E, P, E0, P0, mp = model_20622()
    out.append(
        FamilyInstance(
            "registry",
            {"t": Fraction(3)},
            E,
            P,
            7,
            expected="nontrivial-C",
            label="20622.j1",
            flags={"minimal_model": [str(a) for a in E0.ainvs], "minimal_point": [str(P0.x), str(P0.y)], "u": str(mp.u)},
        )
    )

    E = WeierstrassCurve(0, 605, 0, -3025, 0)
    out.append(
        FamilyInstance(
            "registry",
            {},
            E,
            E.point(Fraction(-13475, 36), Fraction(1249325, 216)),
            (2, 3),
            expected="per-ell primitive, jointly imprimitive at level 6",
            label="12100.j1",
        )
    )

    # torsion examples quoted for the twist construction; kept as printed,
    # so the points are not checked against the curves here
    for ainvs, xy, order in (((0, -7, 0, 3, 0), (1, -3), 4), ((0, 3, 0, -3, 0), (1, 1), 6)):
        E = WeierstrassCurve(*ainvs)
        out.append(
            FamilyInstance(
                "registry",
                {},
                E,
                E.point(*xy, check=False),
                2,
                expected=f"torsion of order {order}",
                label=f"torsion-demo-{order}",
                flags={"claimed_order": order},
            )
        )
    return out


def registry_entry(label: str) -> FamilyInstance:
    for inst in registry():
        if inst.label == label:
            return inst
    raise KeyError(f"no registry entry {label!r}")
