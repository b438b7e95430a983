"""Prime fields F_p and quadratic extensions F_{p^2}.

Elements interoperate with ``int`` and ``Fraction`` (a fraction is reduced by
inverting its denominator), so polynomials and curves with rational
coefficients can be evaluated at finite-field points directly.
"""

from __future__ import annotations

from fractions import Fraction

from .numtheory import factor, legendre, sqrt_mod_int


class Fp:
    __slots__ = ("value", "p")

    def __init__(self, value, p: int):
        if isinstance(value, Fraction):
            den = value.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes mod {p}")
            value = value.numerator * pow(den, -1, p)
        elif isinstance(value, Fp):
            value = value.value
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> Fp:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return Fp(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.value, e, self.p), self.p)

    def inverse(self) -> Fp:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        if isinstance(other, Fraction):
            try:
                return self.value == Fp(other, self.p).value
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def legendre(self) -> int:
        return legendre(self.value, self.p)

    def sqrt(self) -> Fp | None:
        r = sqrt_mod_int(self.value, self.p)
        return None if r is None else Fp(r, self.p)


def sqrt_mod(a: Fp) -> Fp | None:
    """Square root in F_p, or None when a is a non-residue."""
    return a.sqrt()


class Fp2:
    """a + b*T in F_p[T]/(T^2 - c1*T - c0)."""

    __slots__ = ("a", "b", "p", "c1", "c0")

    def __init__(self, a, b, p: int, c1: int, c0: int):
        self.a = int(a) % p
        self.b = int(b) % p
        self.p, self.c1, self.c0 = p, c1 % p, c0 % p

    def _make(self, a, b) -> Fp2:
        return Fp2(a, b, self.p, self.c1, self.c0)

    def _coerce(self, other) -> Fp2:
        if isinstance(other, Fp2):
            if (other.p, other.c1, other.c0) != (self.p, self.c1, self.c0):
                raise ValueError("mixing different quadratic extensions")
            return other
        if isinstance(other, (int, Fraction, Fp)):
            return self._make(Fp(other, self.p).value, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._make(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._make(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return self._make(-self.a, -self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # (a + bT)(c + dT) with T^2 = c1 T + c0
        bd = self.b * o.b
        return self._make(self.a * o.a + bd * self.c0, self.a * o.b + self.b * o.a + bd * self.c1)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self._make(1, 0), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def norm(self) -> int:
        # N(a + bT) = a^2 + c1 ab - c0 b^2
        p = self.p
        return (self.a * self.a + self.c1 * self.a * self.b - self.c0 * self.b * self.b) % p

    def conjugate(self) -> Fp2:
        # conj(T) = c1 - T
        return self._make(self.a + self.b * self.c1, -self.b)

    def inverse(self) -> Fp2:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("0 has no inverse")
        ninv = pow(n, -1, self.p)
        c = self.conjugate()
        return self._make(c.a * ninv, c.b * ninv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b, self.p, self.c1, self.c0))

    def __bool__(self):
        return bool(self.a or self.b)

    def __repr__(self):
        return f"Fp2({self.a} + {self.b}*T mod {self.p}, T^2={self.c1}T+{self.c0})"

    def order(self) -> int:
        """Multiplicative order in the group of order p^2 - 1."""
        if not self:
            raise ValueError("0 has no multiplicative order")
        n = self.p * self.p - 1
        for q in factor(n):
            while n % q == 0 and self ** (n // q) == 1:
                n //= q
        return n

    def is_generator(self) -> bool:
        return bool(self) and self.order() == self.p * self.p - 1


def quadratic_is_irreducible(p: int, c1: int, c0: int) -> bool:
    """Is T^2 - c1*T - c0 irreducible over F_p?"""
    return not any((t * t - c1 * t - c0) % p == 0 for t in range(p)) if p < 64 else (
        legendre(c1 * c1 + 4 * c0, p) == -1 if p != 2 else (c1 % 2, c0 % 2) == (1, 1)
    )


def quadratic_modulus(p: int) -> tuple[int, int]:
    """Smallest irreducible T^2 - T - c or T^2 - c over F_p, as (c1, c0)."""
    for c in range(1, 2 * p + 2):
        for c1 in (1, 0):
            if quadratic_is_irreducible(p, c1, c % p):
                return c1, c % p
    raise ArithmeticError(f"no irreducible quadratic found mod {p}")


def fp2(a, b, p: int, modulus: tuple[int, int] | None = None) -> Fp2:
    c1, c0 = modulus if modulus is not None else quadratic_modulus(p)
    if not quadratic_is_irreducible(p, c1, c0):
        raise ValueError(f"T^2 - {c1}T - {c0} is reducible mod {p}")
    return Fp2(a, b, p, c1, c0)
