"""Dense univariate polynomials over Q (Fraction) or F_p (Fp)."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .fields import Fp

# Degree of the zero polynomial.
DEG_ZERO = -1


def _norm(c):
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    return Fraction(c) if isinstance(c, int) else c


class Poly:
    """Coefficients are stored low to high, with no trailing zeros."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_norm(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def const(cls, a) -> Poly:
        return cls([a])

    @classmethod
    def from_roots(cls, roots: Iterable) -> Poly:
        out = cls([1])
        for r in roots:
            out = out * cls([-r, 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lc(self):
        if not self.c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.c[-1]

    def coeff(self, i: int):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def _lift(self, other) -> Poly:
        return other if isinstance(other, Poly) else Poly([other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.c), len(o.c))
        return Poly([self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([a * other for a in self.c])
        if not self.c or not other.c:
            return Poly()
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(other.c):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        o = self._lift(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = len(rem) - len(o.c)
        if dq < 0:
            return Poly(), self
        inv = 1 / o.c[-1] if not isinstance(o.c[-1], Fp) else o.c[-1].inverse()
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            q = rem[k + len(o.c) - 1] * inv
            quot[k] = q
            if q == 0:
                continue
            for j, b in enumerate(o.c):
                rem[k + j] = rem[k + j] - q * b
        return Poly(quot), Poly(rem[: len(o.c) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> Poly:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other: Poly) -> bool:
        return (other % self).is_zero()

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self * (1 / self.lc() if not isinstance(self.lc(), Fp) else self.lc().inverse())

    def gcd(self, other: Poly) -> Poly:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> Poly:
        return Poly([i * a for i, a in enumerate(self.c)][1:])

    def __call__(self, x):
        # Horner; x may be a field element or another Poly (composition).
        acc = 0 if not isinstance(x, Poly) else Poly()
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def compose(self, g: Poly) -> Poly:
        return self(g)

    def homogeneous_eval(self, num: Poly, den: Poly, deg: int | None = None) -> Poly:
        """den^deg * self(num/den), a polynomial when deg >= self.degree."""
        deg = self.degree if deg is None else deg
        if self.is_zero():
            return Poly()
        out, dpow = Poly(), [Poly([1])]
        for _ in range(deg):
            dpow.append(dpow[-1] * den)
        npow = Poly([1])
        for i, a in enumerate(self.c):
            out = out + npow * dpow[deg - i] * a
            npow = npow * num
        return out

    def map(self, fn) -> Poly:
        return Poly([fn(a) for a in self.c])

    def reduce(self, p: int) -> Poly:
        return Poly([Fp(a, p) for a in self.c])

    def squarefree_part(self) -> Poly:
        g = self.gcd(self.derivative())
        return self.monic() if g.degree < 1 else (self // g).monic()

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        return self == Poly([other])

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        if not self.c:
            return "Poly(0)"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if a == 0:
                continue
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(a.value if isinstance(a, Fp) else a)
            if mon and coef == "1":
                coef = ""
            elif mon and coef == "-1":
                coef = "-"
            terms.append(f"({coef}){mon}" if "/" in coef else f"{coef}{mon}")
        return "Poly(" + " + ".join(terms).replace("+ -", "- ") + ")"


def integer_primitive(f: Poly) -> list[int]:
    """Primitive integer multiple of a rational polynomial, low to high."""
    from math import gcd, lcm

    den = 1
    for a in f.c:
        den = lcm(den, Fraction(a).denominator)
    ints = [int(Fraction(a) * den) for a in f.c]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return []
    if ints[-1] < 0:
        g = -g
    return [a // g for a in ints]
