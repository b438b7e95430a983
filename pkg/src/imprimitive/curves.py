"""Long Weierstrass curves y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.

Coefficients live in an exact field: Q (Fraction) or F_p (Fp). The group law,
division polynomials and changes of model are written once for both.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra import Fp, Poly, rational_root
from .algebra.numtheory import sqrt_mod_int


class NonCurve(ValueError):
    """Raised for singular Weierstrass equations."""


class NotOnCurve(ValueError):
    pass


def _coerce(v):
    if isinstance(v, bool):
        raise TypeError("bool is not a field element")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    return v


class WeierstrassCurve:
    __slots__ = ("a1", "a2", "a3", "a4", "a6", "b2", "b4", "b6", "b8", "c4", "c6",
                 "disc", "_one", "_divpolys")

    def __init__(self, a1=0, a2=0, a3=0, a4=0, a6=0, *, allow_singular=False):
        coeffs = [_coerce(a) for a in (a1, a2, a3, a4, a6)]
        ps = {c.p for c in coeffs if isinstance(c, Fp)}
        if len(ps) > 1:
            raise ValueError("coefficients from different prime fields")
        if ps:
            p = ps.pop()
            coeffs = [Fp(c, p) for c in coeffs]
            self._one = Fp(1, p)
        else:
            self._one = Fraction(1)
        self.a1, self.a2, self.a3, self.a4, self.a6 = coeffs
        a1, a2, a3, a4, a6 = coeffs
        self.b2 = a1 * a1 + 4 * a2
        self.b4 = 2 * a4 + a1 * a3
        self.b6 = a3 * a3 + 4 * a6
        self.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        self.c4 = b2 * b2 - 24 * b4
        self.c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
        self.disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        # 4 b8 = b2 b6 - b4^2 holds identically; cheap self-check.
        assert 4 * b8 == b2 * b6 - b4 * b4
        if self.disc == 0 and not allow_singular:
            raise NonCurve(f"singular curve {self.ainvs}")
        self._divpolys = None

    # -- basic data ---------------------------------------------------------

    @property
    def ainvs(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def field_char(self) -> int:
        return self._one.p if isinstance(self._one, Fp) else 0

    def one(self):
        return self._one

    def discriminant(self):
        return self.disc

    @property
    def j(self):
        return self.c4**3 / self.disc

    def __eq__(self, other):
        return isinstance(other, WeierstrassCurve) and self.ainvs == other.ainvs

    def __hash__(self):
        return hash(tuple(str(a) for a in self.ainvs))

    def __repr__(self):
        return "WeierstrassCurve(" + ", ".join(_fmt(a) for a in self.ainvs) + ")"

    # -- points -------------------------------------------------------------

    @property
    def O(self) -> ECPoint:
        return ECPoint(self, None, None)

    def point(self, x, y, check: bool = True) -> ECPoint:
        x, y = self._elt(x), self._elt(y)
        P = ECPoint(self, x, y)
        if check and not self.contains(x, y):
            raise NotOnCurve(f"({_fmt(x)}, {_fmt(y)}) is not on {self}")
        return P

    def _elt(self, v):
        v = _coerce(v)
        if isinstance(self._one, Fp):
            return Fp(v, self._one.p)
        return v

    def contains(self, x, y) -> bool:
        a1, a2, a3, a4, a6 = self.ainvs
        return y * y + a1 * x * y + a3 * y == x**3 + a2 * x * x + a4 * x + a6

    def is_on(self, P: ECPoint) -> bool:
        return P.is_zero() or self.contains(P.x, P.y)

    def _check(self, P: ECPoint):
        if P.curve is not self and P.curve != self:
            raise NotOnCurve("point belongs to a different curve")

    def neg(self, P: ECPoint) -> ECPoint:
        self._check(P)
        if P.is_zero():
            return P
        return ECPoint(self, P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: ECPoint, Q: ECPoint) -> ECPoint:
        self._check(P)
        self._check(Q)
        if P.is_zero():
            return Q
        if Q.is_zero():
            return P
        a1, a2, a3, a4, a6 = self.ainvs
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            den = y1 + y2 + a1 * x2 + a3
            if den == 0:
                return self.O
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
            nu = (-x1**3 + a4 * x1 + 2 * a6 - a3 * y1) / den
        else:
            lam = (y2 - y1) / (x2 - x1)
            nu = (y1 * x2 - y2 * x1) / (x2 - x1)
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return ECPoint(self, x3, y3)

    def mul(self, n: int, P: ECPoint) -> ECPoint:
        self._check(P)
        if n < 0:
            return self.mul(-n, self.neg(P))
        result, base = self.O, P
        while n:
            if n & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            n >>= 1
        return result

    def lift_x(self, x) -> list[ECPoint]:
        """Points with the given x-coordinate (field must allow square roots)."""
        x = self._elt(x)
        a1, a2, a3, a4, a6 = self.ainvs
        # y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
        bq = a1 * x + a3
        cq = -(x**3 + a2 * x * x + a4 * x + a6)
        disc = bq * bq - 4 * cq
        if isinstance(self._one, Fp):
            p = self._one.p
            if p == 2:
                return [ECPoint(self, x, self._elt(y)) for y in range(2) if self.contains(x, self._elt(y))]
            r = sqrt_mod_int(disc.value, p)
            if r is None:
                return []
            r = Fp(r, p)
        else:
            r = rational_root(disc, 2)
            if r is None:
                return []
        ys = {(-bq + r) / 2, (-bq - r) / 2}
        return [ECPoint(self, x, y) for y in sorted(ys, key=_sortkey)]

    def random_point(self, rng: random.Random) -> ECPoint:
        """Uniform-ish random affine point over a finite prime field."""
        if not isinstance(self._one, Fp):
            raise ValueError("random points only over finite fields")
        p = self._one.p
        while True:
            pts = self.lift_x(rng.randrange(p))
            if pts:
                return pts[rng.randrange(len(pts))]

    def points(self) -> list[ECPoint]:
        """All points over a (small) finite prime field, by enumeration."""
        if not isinstance(self._one, Fp):
            raise ValueError("enumeration only over finite fields")
        p = self._one.p
        out = [self.O]
        for x in range(p):
            for y in range(p):
                if self.contains(Fp(x, p), Fp(y, p)):
                    out.append(ECPoint(self, Fp(x, p), Fp(y, p)))
        return out

    # -- polynomials in x ---------------------------------------------------

    def two_torsion_poly(self) -> Poly:
        """psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6."""
        o = self._one
        return Poly([self.b6, 2 * self.b4, self.b2, 4 * o])

    def _f(self, n: int) -> Poly:
        """f_n = psi_n for odd n and psi_n / psi_2 for even n."""
        if self._divpolys is None:
            o = self._one
            b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
            self._divpolys = {
                0: Poly(),
                1: Poly([o]),
                2: Poly([o]),
                3: Poly([b8, 3 * b6, 3 * b4, b2, 3 * o]),
                4: Poly([b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2 * o]),
            }
        cache = self._divpolys
        if n in cache:
            return cache[n]
        F2 = self.two_torsion_poly() ** 2
        m = n // 2
        f = self._f
        if n % 2:
            if m % 2 == 0:
                val = F2 * f(m + 2) * f(m) ** 3 - f(m - 1) * f(m + 1) ** 3
            else:
                val = f(m + 2) * f(m) ** 3 - F2 * f(m - 1) * f(m + 1) ** 3
        else:
            val = f(m) * (f(m + 2) * f(m - 1) ** 2 - f(m - 2) * f(m + 1) ** 2)
        cache[n] = val
        return val

    def division_polynomial(self, m: int) -> DivisionPolynomial:
        if m < 1:
            raise ValueError("m must be positive")
        return DivisionPolynomial(m, self._f(m), self.two_torsion_poly())

    def multiplication_x_map(self, m: int) -> tuple[Poly, Poly]:
        """(num, den) with x([m]P) = num(x)/den(x)."""
        if m < 1:
            raise ValueError("m must be positive")
        if m == 1:
            return Poly.x() * self._one, Poly([self._one])
        F = self.two_torsion_poly()
        X = Poly([0 * self._one, self._one])
        f = self._f
        if m % 2:
            return X * f(m) ** 2 - F * f(m - 1) * f(m + 1), f(m) ** 2
        return X * F * f(m) ** 2 - f(m - 1) * f(m + 1), F * f(m) ** 2

    def reduce_mod(self, p: int) -> WeierstrassCurve:
        return WeierstrassCurve(*(Fp(a, p) for a in self.ainvs))

    def transform(self, mp: ModelMap) -> tuple[WeierstrassCurve, Callable]:
        E2 = mp.apply(self)
        return E2, lambda P: mp.push(P, E2)


@dataclass(frozen=True)
class DivisionPolynomial:
    """psi_m written as y-free pieces: psi_m = cofactor (odd m) or psi_2 * cofactor."""

    m: int
    cofactor: Poly
    psi2_squared: Poly

    def torsion_x_poly(self) -> Poly:
        """Polynomial whose roots are x-coordinates of nonzero m-torsion."""
        if self.m % 2:
            return self.cofactor
        return self.cofactor * self.psi2_squared


def _sortkey(v):
    return v.value if isinstance(v, Fp) else v


def _fmt(v) -> str:
    if isinstance(v, Fp):
        return str(v.value)
    return str(v)


class ECPoint:
    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: WeierstrassCurve, x, y):
        self.curve, self.x, self.y = curve, x, y

    def is_zero(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, ECPoint):
            return NotImplemented
        return (self.x, self.y) == (other.x, other.y) if not self.is_zero() else other.is_zero()

    def __hash__(self):
        return hash(("pt", _fmt(self.x), _fmt(self.y)))

    def __add__(self, other):
        return self.curve.add(self, other)

    def __neg__(self):
        return self.curve.neg(self)

    def __sub__(self, other):
        return self.curve.add(self, self.curve.neg(other))

    def __rmul__(self, n: int):
        return self.curve.mul(n, self)

    def __repr__(self):
        if self.is_zero():
            return "O"
        return f"({_fmt(self.x)}, {_fmt(self.y)})"

    def xy(self) -> tuple:
        return (self.x, self.y)


@dataclass(frozen=True)
class ModelMap:
    """Change of model x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""

    u: object
    r: object = 0
    s: object = 0
    t: object = 0

    def __post_init__(self):
        for name in ("u", "r", "s", "t"):
            object.__setattr__(self, name, _coerce(getattr(self, name)))
        if self.u == 0:
            raise ValueError("u must be nonzero")

    @classmethod
    def identity(cls) -> ModelMap:
        return cls(1)

    @classmethod
    def scaling(cls, c) -> ModelMap:
        """The rescaling (x, y) -> (c^2 x, c^3 y)."""
        return cls(1 / _coerce(c))

    def apply(self, E: WeierstrassCurve) -> WeierstrassCurve:
        u, r, s, t = self.u, self.r, self.s, self.t
        a1, a2, a3, a4, a6 = E.ainvs
        return WeierstrassCurve(
            (a1 + 2 * s) / u,
            (a2 - s * a1 + 3 * r - s * s) / u**2,
            (a3 + r * a1 + 2 * t) / u**3,
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4,
            (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6,
        )

    def push(self, P: ECPoint, target: WeierstrassCurve | None = None) -> ECPoint:
        E2 = target if target is not None else self.apply(P.curve)
        if P.is_zero():
            return E2.O
        u, r, s, t = self.u, self.r, self.s, self.t
        x2 = (P.x - r) / u**2
        y2 = (P.y - s * (P.x - r) - t) / u**3
        return E2.point(x2, y2)

    def pull(self, P: ECPoint, target: WeierstrassCurve) -> ECPoint:
        """Inverse transport onto the original model."""
        if P.is_zero():
            return target.O
        u, r, s, t = self.u, self.r, self.s, self.t
        return target.point(u * u * P.x + r, u**3 * P.y + s * u * u * P.x + t)

    def inverse(self) -> ModelMap:
        u, r, s, t = self.u, self.r, self.s, self.t
        return ModelMap(1 / u, -r / u**2, -s / u, (r * s - t) / u**3)

    def then(self, other: ModelMap) -> ModelMap:
        """Apply self first, then other."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return ModelMap(
            u1 * u2,
            r1 + u1 * u1 * r2,
            s1 + u1 * s2,
            t1 + u1 * u1 * s1 * r2 + u1**3 * t2,
        )


def transform(E: WeierstrassCurve, mp: ModelMap):
    """(E', transporter) for the model change mp."""
    return E.transform(mp)


def isomorphisms(E1: WeierstrassCurve, E2: WeierstrassCurve) -> list[ModelMap]:
    """All model maps over Q carrying E1 onto E2 (empty if none)."""
    if E1.j != E2.j:
        return []
    c4, c6, c4p, c6p = E1.c4, E1.c6, E2.c4, E2.c6
    if c4 == 0:
        u2 = rational_root(c6 / c6p, 3)
    elif c6 == 0:
        u2 = rational_root(c4 / c4p, 2)
    else:
        u2 = (c6 * c4p) / (c6p * c4)
    if u2 is None or u2 <= 0:
        return []
    u = rational_root(u2, 2)
    if u is None:
        return []
    out = []
    a1, a2, a3, _, _ = E1.ainvs
    for uu in (u, -u):
        s = (uu * E2.a1 - a1) / 2
        r = (uu**2 * E2.a2 - a2 + s * a1 + s * s) / 3
        t = (uu**3 * E2.a3 - a3 - r * a1) / 2
        mp = ModelMap(uu, r, s, t)
        if mp.apply(E1) == E2:
            out.append(mp)
    return out


def isomorphism(E1: WeierstrassCurve, E2: WeierstrassCurve) -> ModelMap | None:
    maps = isomorphisms(E1, E2)
    return maps[0] if maps else None


def quadratic_twist_00(a, b, D) -> WeierstrassCurve:
    """The twist y^2 = x(x^2 + aD x + bD^2) of y^2 = x(x^2 + ax + b)."""
    a, b, D = _coerce(a), _coerce(b), _coerce(D)
    if D == 0:
        raise ValueError("twist parameter D must be nonzero")
    if b == 0 or a * a - 4 * b == 0:
        raise NonCurve("need b != 0 and a^2 - 4b != 0")
    return WeierstrassCurve(0, a * D, 0, b * D * D, 0)


def model_00(a, b) -> WeierstrassCurve:
    return quadratic_twist_00(a, b, 1)


def discriminant(E: WeierstrassCurve):
    return E.disc


def integral_model(E: WeierstrassCurve) -> tuple[WeierstrassCurve, ModelMap]:
    """Scale (x, y) -> (c^2 x, c^3 y) with the smallest integer c making all a_i integral."""
    from math import lcm

    from .algebra import factor

    c = 1
    dens = [Fraction(a).denominator for a in E.ainvs]
    primes = set()
    for d in dens:
        if d > 1:
            primes.update(factor(d))
    for q in sorted(primes):
        k = 0
        while True:
            ck = q**k
            if all((Fraction(a) * ck**i).denominator % q for a, i in zip(E.ainvs, (1, 2, 3, 4, 6))):
                break
            k += 1
        c = lcm(c, q**k)
    mp = ModelMap.scaling(c)
    return mp.apply(E), mp
