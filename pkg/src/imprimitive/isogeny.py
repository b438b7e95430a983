"""Isogenies of prime degree l in {2, 3, 5, 7} with rational kernel.

An isogeny is stored as rational maps in x and y:

    X = xn(x) / xd(x),    Y = (y * rn(x) + sn(x)) / xd(x)^2.

Velu's formulas are written in terms of the kernel polynomial D, using

    sum_i g(x_i) / (x - x_i) = (g D' mod D) / D

over the roots x_i of D, so no root ever has to be adjoined.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Fp, Poly, is_prime, rational_factors, rational_roots
from .curves import ECPoint, ModelMap, NonCurve, NotOnCurve, WeierstrassCurve, isomorphisms

SUPPORTED = (2, 3, 5, 7)


class NotASubgroup(ValueError):
    pass


class DualNotFound(ArithmeticError):
    pass


@dataclass(frozen=True)
class KernelSubgroup:
    """A rational cyclic subgroup of prime order l, via its kernel polynomial."""

    ell: int
    poly: Poly
    generator: ECPoint | None = None

    @classmethod
    def from_point(cls, E: WeierstrassCurve, T: ECPoint, ell: int) -> KernelSubgroup:
        if T.is_zero() or not E.mul(ell, T).is_zero():
            raise NotASubgroup(f"{T} does not have order {ell}")
        xs = []
        Q = T
        for _ in range(max(1, (ell - 1) // 2)):
            xs.append(Q.x)
            Q = E.add(Q, T)
        return cls(ell, Poly.from_roots(xs), T)

    @classmethod
    def from_poly(cls, ell: int, poly: Poly) -> KernelSubgroup:
        return cls(ell, poly.monic())


def _trace(g: Poly, D: Poly) -> object:
    """Sum of g over the roots of monic D."""
    n = D.degree
    return ((g * D.derivative()) % D).coeff(n - 1)


def is_kernel(E: WeierstrassCurve, K: KernelSubgroup) -> bool:
    """Does K.poly cut out a subgroup of order l of E?"""
    ell, D = K.ell, K.poly
    if ell not in SUPPORTED:
        raise ValueError(f"unsupported degree {ell}")
    if D.degree != max(1, (ell - 1) // 2):
        return False
    if ell == 2:
        return (E.two_torsion_poly() % D).is_zero()
    if not (E.division_polynomial(ell).cofactor % D).is_zero():
        return False
    if ell == 3:
        return True
    # (Z/l)^*/{+-1} is generated by 2 for l = 5, 7: roots must be stable under x o [2].
    n2, d2 = E.multiplication_x_map(2)
    return (D.homogeneous_eval(n2, d2) % D).is_zero()


@dataclass(frozen=True)
class IsogenyMap:
    domain: WeierstrassCurve
    codomain: WeierstrassCurve
    degree: int
    kernel: Poly
    xn: Poly
    xd: Poly
    rn: Poly
    sn: Poly

    @property
    def yd(self) -> Poly:
        return self.xd * self.xd

    def x_map(self) -> tuple[Poly, Poly]:
        return self.xn, self.xd

    def push(self, P: ECPoint) -> ECPoint:
        if P.is_zero():
            return self.codomain.O
        den = self.xd(P.x)
        if den == 0:
            return self.codomain.O
        X = self.xn(P.x) / den
        Y = (P.y * self.rn(P.x) + self.sn(P.x)) / (den * den)
        return self.codomain.point(X, Y)

    __call__ = push

    def then_model(self, mp: ModelMap) -> IsogenyMap:
        """Follow the isogeny by a change of model on the codomain."""
        u, r, s, t = mp.u, mp.r, mp.s, mp.t
        xn, xd = self.xn, self.xd
        shifted = xn - xd * r
        u2inv, u3inv = 1 / (u * u), 1 / (u * u * u)
        return IsogenyMap(
            self.domain,
            mp.apply(self.codomain),
            self.degree,
            self.kernel,
            shifted * u2inv,
            xd,
            self.rn * u3inv,
            (self.sn - shifted * xd * s - xd * xd * t) * u3inv,
        )

    def mod(self, p: int) -> IsogenyMap:
        """Reduction mod a prime where all data is p-integral and the curves stay smooth."""
        return IsogenyMap(
            self.domain.reduce_mod(p),
            self.codomain.reduce_mod(p),
            self.degree,
            self.kernel.reduce(p),
            self.xn.reduce(p),
            self.xd.reduce(p),
            self.rn.reduce(p),
            self.sn.reduce(p),
        )

    def kernel_subgroup(self) -> KernelSubgroup:
        return KernelSubgroup(self.degree, self.kernel)


def _from_x_map(E: WeierstrassCurve, E2: WeierstrassCurve, ell: int, D: Poly, xn: Poly, xd: Poly) -> IsogenyMap:
    """Complete a normalized x-map to an isogeny (a1, a3 unchanged by Velu).

    The invariant differential is preserved, so 2Y + a1 X + a3 = X'(x) (2y + a1 x + a3).
    """
    a1, a3 = E.a1, E.a3
    rn = xn.derivative() * xd - xn * xd.derivative()
    sn = (Poly([a3, a1]) * rn - xn * xd * a1 - xd * xd * a3) * Fraction(1, 2)
    return IsogenyMap(E, E2, ell, D, xn, xd, rn, sn)


def velu(E: WeierstrassCurve, K: KernelSubgroup, check: bool = True) -> IsogenyMap:
    """Velu's isogeny with kernel K, normalized (pulls back the invariant differential)."""
    ell, D = K.ell, K.poly.monic()
    if check and not is_kernel(E, K):
        raise NotASubgroup("kernel polynomial does not define a subgroup")
    F = E.two_torsion_poly()
    Fd = F.derivative()
    x = Poly.x()
    if ell == 2:
        x0 = -D.coeff(0)
        v = Fd(x0) / 4
        t, w = v, x0 * v
        xn, xd = x * D + v, D
    else:
        G = (Fd * Fraction(1, 2) * D.derivative()) % D
        H = (F * D.derivative()) % D
        t = _trace(Fd * Fraction(1, 2), D)
        w = _trace(F + x * Fd * Fraction(1, 2), D)
        xn = x * D * D + G * D + H * D.derivative() - H.derivative() * D
        xd = D * D
    a1, a2, a3, a4, a6 = E.ainvs
    E2 = WeierstrassCurve(a1, a2, a3, a4 - 5 * t, a6 - E.b2 * t - 7 * w)
    return _from_x_map(E, E2, ell, D, xn, xd)


# -- the explicit maps ------------------------------------------------------


def two_isogeny(a, b):
    """(E, E', phi, phi_hat) for E: y^2 = x(x^2 + ax + b), E': v^2 = u(u^2 - 2au + d).

    phi(x, y) = (y^2/x^2, (1 - b/x^2) y) and
    phi_hat(u, v) = (v^2/(4u^2), (1 - b/u^2) v/8) exactly as displayed.
    """
    a, b = Fraction(a), Fraction(b)
    d = a * a - 4 * b
    if b == 0 or d == 0:
        raise NonCurve("need b != 0 and a^2 - 4b != 0")
    E = WeierstrassCurve(0, a, 0, b, 0)
    E1 = WeierstrassCurve(0, -2 * a, 0, d, 0)
    x = Poly.x()
    phi = IsogenyMap(E, E1, 2, x, x * x + x * a + b, x, x * x - b, Poly())
    # v^2/(4u^2) = (u^2 - 2au + d)/(4u); (1 - b/u^2) v/8 = v (u^2 - b) / (8u^2)
    phi_hat = IsogenyMap(
        E1, E, 2, x, (x * x - x * 2 * a + d) * Fraction(1, 4), x, (x * x - b) * Fraction(1, 8), Poly()
    )
    return E, E1, phi, phi_hat


def two_isogeny_dual_corrected(a, b) -> IsogenyMap:
    """The dual of two_isogeny's phi: (u, v) -> (v^2/(4u^2), (1 - d/u^2) v/8)."""
    a, b = Fraction(a), Fraction(b)
    d = a * a - 4 * b
    E = WeierstrassCurve(0, a, 0, b, 0)
    E1 = WeierstrassCurve(0, -2 * a, 0, d, 0)
    x = Poly.x()
    return IsogenyMap(E1, E, 2, x, (x * x - x * 2 * a + d) * Fraction(1, 4), x, (x * x - d) * Fraction(1, 8), Poly())


def deuring_curve(a, b) -> WeierstrassCurve:
    """E': y^2 + a xy + b y = x^3, with (0, 0) of order 3."""
    return WeierstrassCurve(a, 0, b, 0, 0)


def deuring_quotient(a, b) -> WeierstrassCurve:
    """E: y^2 + a xy + b y = x^3 - 5ab x - (a^3 + 7b) b."""
    a, b = Fraction(a), Fraction(b)
    return WeierstrassCurve(a, 0, b, -5 * a * b, -(a**3 + 7 * b) * b)


def three_isogeny_deuring(a, b):
    """(E', E, phi3) with the displayed explicit 3-isogeny."""
    a, b = Fraction(a), Fraction(b)
    if b == 0 or a**3 - 27 * b == 0:
        raise NonCurve("need b != 0 and a^3 != 27b")
    E1, E = deuring_curve(a, b), deuring_quotient(a, b)
    x = Poly.x()
    # Y = (y (x^3 - abx - 2b^2) - b (ax + b)^2) / x^3, over the denominator x^4
    rn = x * (x**3 - x * (a * b) - 2 * b * b)
    sn = -(x * (Poly([b, a]) ** 2) * b)
    phi = IsogenyMap(E1, E, 3, x, x**3 + x * (a * b) + b * b, x * x, rn, sn)
    return E1, E, phi


# -- enumeration and duals ---------------------------------------------------


def rational_kernels(E: WeierstrassCurve, ell: int) -> list[KernelSubgroup]:
    """All rational cyclic subgroups of order l of E."""
    if ell not in SUPPORTED:
        raise ValueError(f"unsupported degree {ell}")
    if ell == 2:
        return [KernelSubgroup(2, Poly([-r, 1])) for r in rational_roots(E.two_torsion_poly())]
    n = (ell - 1) // 2
    out = []
    for D in rational_factors(E.division_polynomial(ell).cofactor, n):
        K = KernelSubgroup(ell, D)
        if is_kernel(E, K):
            out.append(K)
    return out


def rational_isogenies(E: WeierstrassCurve, ell: int) -> list[tuple[KernelSubgroup, WeierstrassCurve]]:
    return [(K, velu(E, K, check=False).codomain) for K in rational_kernels(E, ell)]


def _good_primes(maps, count: int, start: int = 11):
    out = []
    p = start
    while len(out) < count:
        p += 1
        if not is_prime(p):
            continue
        try:
            for m in maps:
                m.mod(p)
                for E in (m.domain, m.codomain):
                    if Fraction(E.disc).numerator % p == 0:
                        raise ZeroDivisionError
        except ZeroDivisionError:
            continue
        except NonCurve:
            continue
        out.append(p)
    return out


def _compose_x(psi: IsogenyMap, phi: IsogenyMap) -> tuple[Poly, Poly]:
    deg = max(psi.xn.degree, psi.xd.degree)
    return (psi.xn.homogeneous_eval(phi.xn, phi.xd, deg), psi.xd.homogeneous_eval(phi.xn, phi.xd, deg))


def composes_to_mult(psi: IsogenyMap, phi: IsogenyMap, symbolic: bool = True, primes=None, points: int = 4, seed: int = 0) -> bool:
    """Is psi o phi = [l] on phi's domain? x-maps symbolically, full points mod p."""
    ell = phi.degree
    E = phi.domain
    if symbolic:
        num, den = _compose_x(psi, phi)
        mnum, mden = E.multiplication_x_map(ell)
        if not (num * mden - mnum * den).is_zero():
            return False
    rng = random.Random(seed)
    for p in primes or _good_primes([phi, psi], 1):
        phip, psip = phi.mod(p), psi.mod(p)
        Ep = phip.domain
        for _ in range(points):
            P = Ep.random_point(rng)
            try:
                if psip.push(phip.push(P)) != Ep.mul(ell, P):
                    return False
            except NotOnCurve:
                return False
    return True


def dual(phi: IsogenyMap) -> IsogenyMap:
    """The dual isogeny codomain -> domain, with psi o phi = [l]."""
    ell, E, E1 = phi.degree, phi.domain, phi.codomain
    for K in rational_kernels(E1, ell):
        psi0 = velu(E1, K, check=False)
        for mp in isomorphisms(psi0.codomain, E):
            psi = psi0.then_model(mp)
            if psi.codomain != E:
                continue
            if composes_to_mult(psi, phi):
                return psi
    raise DualNotFound(f"no rational kernel of {E1} gives the dual")


def isogenies_into(E: WeierstrassCurve, ell: int) -> list[IsogenyMap]:
    """Isogenies phi: E' -> E of degree l, as duals of E's rational l-subgroups."""
    out = []
    for K in rational_kernels(E, ell):
        out.append(dual(velu(E, K, check=False)))
    return out


def kernel_points_mod_p(phi_p: IsogenyMap) -> int:
    """Number of points of phi's domain over F_p killed by phi (including O)."""
    E = phi_p.domain
    p = E.field_char
    count = 1
    for x in range(p):
        if phi_p.xd(Fp(x, p)) == 0:
            count += len(E.lift_x(Fp(x, p)))
    return count
