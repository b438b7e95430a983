"""Rational torsion, division of points by l, and global l-primitivity over Q."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Poly, is_prime, rational_roots
from .curves import ECPoint, WeierstrassCurve, integral_model
from .reduction import raw_count_points

# Mazur: rational torsion has order <= 12; points of larger order are
# declared infinite, with some margin.
ORDER_CAP = 16
# Largest q^k dividing the exponent of a rational torsion group.
_MAZUR_EXP = {2: 8, 3: 9, 5: 5, 7: 7}


class TorsionPointError(ValueError):
    pass


@dataclass(frozen=True)
class TorsionInfo:
    order: int | None  # None means infinite order; for a group, its size
    structure: tuple[int, ...] = ()
    generators: tuple = ()
    points: tuple = field(default=(), repr=False)

    @property
    def is_torsion(self) -> bool:
        return self.order is not None

    @property
    def size(self) -> int:
        return math.prod(self.structure) if self.structure else 1


@dataclass(frozen=True)
class DivisionResult:
    ell: int
    target: ECPoint
    points: tuple

    def __bool__(self):
        return bool(self.points)

    def __len__(self):
        return len(self.points)


def _good_counts(E: WeierstrassCurve, count: int = 5, start: int = 3) -> list[int]:
    Ei, _ = integral_model(E)
    disc = Fraction(Ei.disc).numerator
    a = [int(Fraction(c)) for c in Ei.ainvs]
    out = []
    p = start
    while len(out) < count:
        if is_prime(p) and disc % p:
            out.append(raw_count_points(tuple(c % p for c in a), p))
        p += 1
    return out


def torsion_bound(E: WeierstrassCurve, count: int = 5) -> int:
    """gcd of #E(F_p) over good odd primes; the rational torsion order divides it."""
    g = 0
    for n in _good_counts(E, count):
        g = math.gcd(g, n)
    return g


def point_order(E: WeierstrassCurve, P: ECPoint) -> TorsionInfo:
    if P.is_zero():
        return TorsionInfo(1)
    g = torsion_bound(E)
    for d in sorted(d for d in range(1, ORDER_CAP + 1) if g % d == 0):
        if E.mul(d, P).is_zero():
            return TorsionInfo(d)
    return TorsionInfo(None)


def _points_with_x_roots(E: WeierstrassCurve, f: Poly) -> list[ECPoint]:
    pts = []
    for x in rational_roots(f):
        pts.extend(E.lift_x(x))
    return pts


def _sylow(E: WeierstrassCurve, q: int, k: int) -> list[ECPoint]:
    """Rational points of order dividing q^k."""
    f = E.division_polynomial(q**k).torsion_x_poly()
    pts = [E.O] + _points_with_x_roots(E, f)
    return [P for P in pts if E.mul(q**k, P).is_zero()]


def torsion_subgroup(E: WeierstrassCurve) -> TorsionInfo:
    g = torsion_bound(E, 8)
    parts = []
    for q, qmax in _MAZUR_EXP.items():
        k = 0
        while g % q ** (k + 1) == 0 and q ** (k + 1) <= qmax:
            k += 1
        if k:
            parts.append(_sylow(E, q, k))
    points = [E.O]
    for S in parts:
        points = [E.add(P, Q) for P in points for Q in S]
    size = len(points)
    orders = {P: point_order_exact(E, P) for P in points}
    n2 = max(orders.values())
    n1 = size // n2
    gens = [next(P for P in points if orders[P] == n2)]
    if n1 > 1:
        multiples = {E.mul(i, gens[0]) for i in range(n2)}
        gens.append(next(P for P in points if orders[P] == n1 and P not in multiples))
    structure = (n1, n2) if n1 > 1 else (n2,)
    pts = tuple(sorted(points, key=lambda P: (orders[P], str(P))))
    return TorsionInfo(size, structure, tuple(gens), pts)


def point_order_exact(E: WeierstrassCurve, P: ECPoint) -> int:
    """Order of a point known to be torsion."""
    Q, n = P, 1
    while not Q.is_zero():
        Q = E.add(Q, P)
        n += 1
        if n > ORDER_CAP:
            raise TorsionPointError("point is not torsion")
    return n


def divide_point(E: WeierstrassCurve, P: ECPoint, ell: int) -> DivisionResult:
    """All rational Q with l*Q = P."""
    if P.is_zero():
        pts = [E.O] + _points_with_x_roots(E, E.division_polynomial(ell).torsion_x_poly())
    else:
        num, den = E.multiplication_x_map(ell)
        pts = _points_with_x_roots(E, num - den * P.x)
    out = []
    for Q in pts:
        if E.mul(ell, Q) == P and Q not in out:
            out.append(Q)
    return DivisionResult(ell, P, tuple(out))


def rational_torsion_points(E: WeierstrassCurve, ell: int) -> list[ECPoint]:
    """Rational points of exact order l."""
    return [Q for Q in divide_point(E, E.O, ell).points if not Q.is_zero()]


def is_globally_ell_primitive(E: WeierstrassCurve, P: ECPoint, ell: int) -> bool:
    if point_order(E, P).is_torsion:
        raise TorsionPointError(f"{P} is a torsion point")
    return not divide_point(E, P, ell)


def full_ell_torsion_rational(E: WeierstrassCurve, ell: int) -> tuple[bool, str]:
    if ell == 2:
        n = len(rational_roots(E.two_torsion_poly()))
        return n == 3, f"psi_2^2 has {n} rational roots"
    return False, "Weil pairing forces zeta_l in K, impossible over Q for l > 2"
