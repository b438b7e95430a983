"""Reduction mod p: point counts, point orders, group structure, local index.

Two layers. The object layer works with WeierstrassCurve / ECPoint over Fp.
The raw layer works on plain ints (coefficients and coordinates mod p, the
point at infinity is None) and is what the prime scans use.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .algebra import Fp, factor, sqrt_mod_int
from .curves import ECPoint, WeierstrassCurve

MAX_PRIME = 10**6


class BadReduction(Exception):
    """p divides the discriminant of the given model."""

    def __init__(self, p: int):
        super().__init__(f"bad reduction at p={p}")
        self.p = p


# -- raw affine arithmetic ----------------------------------------------------


def raw_on_curve(a, P, p) -> bool:
    if P is None:
        return True
    a1, a2, a3, a4, a6 = a
    x, y = P
    return (y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)) % p == 0


def raw_neg(a, P, p):
    if P is None:
        return None
    x, y = P
    return (x, (-y - a[0] * x - a[2]) % p)


def raw_add(a, P, Q, p):
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, a6 = a
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        den = (y1 + y2 + a1 * x2 + a3) % p
        if den == 0:
            return None
        inv = pow(den, -1, p)
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) * inv % p
        nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) * inv % p
    else:
        inv = pow(x2 - x1, -1, p)
        lam = (y2 - y1) * inv % p
        nu = (y1 * x2 - y2 * x1) * inv % p
    x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % p
    y3 = (-(lam + a1) * x3 - nu - a3) % p
    return (x3, y3)


def raw_mul(a, n, P, p):
    if n < 0:
        return raw_mul(a, -n, raw_neg(a, P, p), p)
    result = None
    while n:
        if n & 1:
            result = raw_add(a, result, P, p)
        P = raw_add(a, P, P, p)
        n >>= 1
    return result


@lru_cache(maxsize=64)
def _square_table(p: int) -> np.ndarray:
    table = np.zeros(p, dtype=bool)
    xs = np.arange(p, dtype=np.int64)
    table[(xs * xs) % p] = True
    return table


def _rhs_values(a, p) -> np.ndarray:
    """(2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6, evaluated for all x."""
    a1, a2, a3, a4, a6 = a
    b2 = (a1 * a1 + 4 * a2) % p
    b4 = (2 * a4 + a1 * a3) % p
    b6 = (a3 * a3 + 4 * a6) % p
    xs = np.arange(p, dtype=np.int64)
    v = np.full(p, 4 % p, dtype=np.int64)
    for c in (b2, 2 * b4 % p, b6):
        v = (v * xs + c) % p
    return v


def raw_count_points(a, p: int) -> int:
    if p > MAX_PRIME:
        raise ValueError(f"point counting capped at p <= {MAX_PRIME}")
    if p == 2:
        return 1 + sum(raw_on_curve(a, (x, y), 2) for x in range(2) for y in range(2))
    v = _rhs_values(a, p)
    sq = _square_table(p)
    chi = np.where(v == 0, 0, np.where(sq[v], 1, -1))
    n = p + 1 + int(chi.sum())
    assert (n - p - 1) ** 2 <= 4 * p, "Hasse bound violated"
    return n


def raw_lift_x(a, x, p):
    """Some point with the given x, or None."""
    a1, a2, a3, a4, a6 = a
    if p == 2:
        for y in range(2):
            if raw_on_curve(a, (x, y), 2):
                return (x, y)
        return None
    bq = (a1 * x + a3) % p
    cq = -(x * x * x + a2 * x * x + a4 * x + a6) % p
    disc = (bq * bq - 4 * cq) % p
    r = sqrt_mod_int(disc, p)
    if r is None:
        return None
    return (x, (r - bq) * pow(2, -1, p) % p)


def raw_random_point(a, p, rng):
    while True:
        pt = raw_lift_x(a, rng.randrange(p), p)
        if pt is not None:
            if p > 2 and rng.random() < 0.5:
                pt = raw_neg(a, pt, p)
            return pt


@lru_cache(maxsize=4096)
def _factor_cached(n: int) -> tuple:
    return tuple(factor(n).items())


def raw_point_order(a, P, N, p) -> int:
    if P is None:
        return 1
    order = N
    for q, _ in _factor_cached(N):
        while order % q == 0 and raw_mul(a, order // q, P, p) is None:
            order //= q
    return order


def _ell_order(a, Q, q, p) -> int:
    """Exponent k with q^k the order of Q, given Q has q-power order."""
    k = 0
    while Q is not None:
        Q = raw_mul(a, q, Q, p)
        k += 1
    return k


def raw_group_structure(a, p, N, rng=None, samples: int = 32, exhaustive: bool = False):
    """(n1, n2) with E(F_p) = Z/n1 x Z/n2, n1 | n2.

    Only primes q with q^2 | N and q | p - 1 can divide n1. For each, the
    q-Sylow subgroup Z/q^a x Z/q^b (a <= b) is probed with points M*R, M the
    prime-to-q part of N; b is the largest q-order seen. A random element of
    the Sylow group has full order q^b with probability >= 1 - 1/q, so the
    sampled answer is wrong with probability <= q^-samples. With exhaustive
    set, every point of E(F_p) is used instead.
    """
    rng = rng or random.Random(p)
    n1 = 1
    pts = None
    for q, k in _factor_cached(N):
        if k < 2 or (p - 1) % q:
            continue
        a_max = min(k // 2, _val(p - 1, q))
        M = N // q**k
        best = 0
        if exhaustive:
            if pts is None:
                pts = _all_points(a, p)
            it = iter(pts)
        for i in range(len(pts) if exhaustive else samples):
            R = next(it) if exhaustive else raw_random_point(a, p, rng)
            best = max(best, _ell_order(a, raw_mul(a, M, R, p), q, p))
            if best == k:
                break
        e = k - best
        assert e <= a_max, "inconsistent group structure"
        n1 *= q**e
    return n1, N // n1


def _val(n, q):
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def _all_points(a, p):
    out = []
    for x in range(p):
        pt = raw_lift_x(a, x, p)
        if pt is not None:
            out.append(pt)
            other = raw_neg(a, pt, p)
            if other != pt:
                out.append(other)
    return out


# -- object layer -----------------------------------------------------------


@dataclass(frozen=True)
class ReducedCurve:
    curve: WeierstrassCurve
    p: int
    source: WeierstrassCurve

    @property
    def raw(self) -> tuple:
        return tuple(int(c) for c in self.curve.ainvs)


@dataclass(frozen=True)
class GroupStructure:
    N: int
    n1: int
    n2: int
    p: int

    def __post_init__(self):
        assert self.n1 * self.n2 == self.N
        assert self.n2 % self.n1 == 0
        assert (self.p - 1) % self.n1 == 0
        assert (self.N - self.p - 1) ** 2 <= 4 * self.p

    @property
    def cyclic(self) -> bool:
        return self.n1 == 1


@dataclass(frozen=True)
class LocalIndexRecord:
    p: int
    N: int
    order: int
    index: int
    flags: dict = field(default_factory=dict)
    cyclic: bool | None = None

    def __post_init__(self):
        assert self.index * self.order == self.N


def is_integral(E: WeierstrassCurve) -> bool:
    return all(Fraction(a).denominator == 1 for a in E.ainvs)


def has_good_reduction(E: WeierstrassCurve, p: int) -> bool:
    return Fraction(E.disc).numerator % p != 0


def reduce_point_raw(P: ECPoint, p: int):
    """Reduction of a rational point on an integral model; None is O."""
    if P.is_zero():
        return None
    x, y = Fraction(P.x), Fraction(P.y)
    if x.denominator % p == 0:
        return None
    return (x.numerator * pow(x.denominator, -1, p) % p, y.numerator * pow(y.denominator, -1, p) % p)


def reduce(E: WeierstrassCurve, points, p: int):
    """(ReducedCurve, reduced points). Raises BadReduction when p | disc."""
    if not is_integral(E):
        raise ValueError("reduce needs an integral model; see curves.integral_model")
    if not has_good_reduction(E, p):
        raise BadReduction(p)
    Ep = E.reduce_mod(p)
    out = []
    for P in points:
        r = reduce_point_raw(P, p)
        out.append(Ep.O if r is None else Ep.point(Fp(r[0], p), Fp(r[1], p)))
    return ReducedCurve(Ep, p, E), out


def _as_reduced(Ep) -> tuple[tuple, int]:
    if isinstance(Ep, ReducedCurve):
        return Ep.raw, Ep.p
    return tuple(int(c) for c in Ep.ainvs), Ep.field_char


def _raw_point(P: ECPoint):
    return None if P.is_zero() else (int(P.x), int(P.y))


def count_points(Ep) -> int:
    a, p = _as_reduced(Ep)
    return raw_count_points(a, p)


def count_points_naive(Ep) -> int:
    a, p = _as_reduced(Ep)
    return 1 + sum(raw_on_curve(a, (x, y), p) for x in range(p) for y in range(p))


def point_order(Ep, P: ECPoint, N: int | None = None) -> int:
    a, p = _as_reduced(Ep)
    if N is None:
        N = raw_count_points(a, p)
    return raw_point_order(a, _raw_point(P), N, p)


def group_structure(Ep, N: int | None = None, exhaustive: bool | None = None) -> GroupStructure:
    a, p = _as_reduced(Ep)
    if N is None:
        N = raw_count_points(a, p)
    if exhaustive is None:
        exhaustive = p < 2000
    n1, n2 = raw_group_structure(a, p, N, exhaustive=exhaustive)
    return GroupStructure(N, n1, n2, p)


def raw_local_index(a, P, p, ells=(), with_cyclic: bool = False, N: int | None = None) -> LocalIndexRecord:
    if N is None:
        N = raw_count_points(a, p)
    order = raw_point_order(a, P, N, p)
    index = N // order
    cyclic = None
    if with_cyclic:
        cyclic = index == 1 or raw_group_structure(a, p, N)[0] == 1
    return LocalIndexRecord(p, N, order, index, {l: index % l == 0 for l in ells}, cyclic)


def local_index(Ep, P: ECPoint, ells=(), with_cyclic: bool = True) -> LocalIndexRecord:
    a, p = _as_reduced(Ep)
    return raw_local_index(a, _raw_point(P), p, ells, with_cyclic)


def hasse_ok(N: int, p: int) -> bool:
    return (N - p - 1) ** 2 <= 4 * p and abs(N - p - 1) <= 2 * math.isqrt(p) + 2
