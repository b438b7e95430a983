"""Integer arithmetic: primality, factorization, residue symbols, square roots."""

from __future__ import annotations

import math
import random
from collections import Counter
from fractions import Fraction
from functools import lru_cache

# Deterministic for n < 3.3e24, which covers 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 2**64, 64 random rounds above."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < 1 << 64:
        bases = _MR_BASES
    else:
        rng = random.Random(n)
        bases = _MR_BASES + tuple(rng.randrange(2, n - 1) for _ in range(64))
    return all(_mr_round(n, d, s, a % n) for a in bases if a % n)


def _brent(n: int, seed: int) -> int:
    """Pollard rho with Brent's cycle detection. Returns a factor (maybe n)."""
    rng = random.Random(seed)
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g


def _split(n: int, out: Counter) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] += 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, out)
        _split(r, out)
        return
    seed = 1
    while True:
        d = _brent(n, seed)
        if 1 < d < n:
            break
        seed += 1
    _split(d, out)
    _split(n // d, out)


def factor(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: Counter = Counter()
    for q in range(2, 1000):
        if q * q > n:
            break
        while n % q == 0:
            out[q] += 1
            n //= q
    if n > 1:
        _split(n, out)
    return dict(sorted(out.items()))


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, e in factor(n).items():
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    f = factor(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def valuation(n: int, q: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for q in range(2, math.isqrt(n) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytearray(len(range(q * q, n + 1, q)))
    return [i for i, flag in enumerate(sieve) if flag]


def primes_between(lo: int, hi: int) -> list[int]:
    return [p for p in primes_up_to(hi) if p >= lo]


def legendre(a: int, p: int) -> int:
    """Quadratic residue symbol (a/p) for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_int(a: int, p: int) -> int | None:
    """Tonelli-Shanks. Returns some r with r*r = a mod p, or None."""
    a %= p
    if a == 0 or p == 2:
        return a
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


@lru_cache(maxsize=None)
def _prime_factors_cached(n: int) -> tuple[int, ...]:
    return tuple(factor(n))


def is_primitive_root(g: int, p: int) -> bool:
    """Does g generate (Z/p)^*?"""
    g %= p
    if g == 0:
        return False
    if p == 2:
        return True
    return all(pow(g, (p - 1) // q, p) != 1 for q in _prime_factors_cached(p - 1))


def multiplicative_order(g: int, p: int) -> int:
    g %= p
    if g == 0:
        raise ValueError("0 has no multiplicative order")
    n = p - 1
    for q in _prime_factors_cached(p - 1):
        while n % q == 0 and pow(g, n // q, p) == 1:
            n //= q
    return n


# -- exact rational roots -------------------------------------------------


def int_root(n: int, k: int) -> int | None:
    """Exact integer k-th root of n, or None."""
    if n < 0:
        if k % 2 == 0:
            return None
        r = int_root(-n, k)
        return None if r is None else -r
    if n < 2:
        return n
    # Newton from above decreases monotonically to floor(n**(1/k)).
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x**k == n else None


def rational_root(q: Fraction, k: int) -> Fraction | None:
    q = Fraction(q)
    num, den = int_root(q.numerator, k), int_root(q.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def is_rational_square(q: Fraction) -> bool:
    return rational_root(Fraction(q), 2) is not None


def squarefree_kernel(n: int) -> int:
    """Signed squarefree part: n = kernel * square."""
    if n == 0:
        raise ValueError("squarefree kernel of 0")
    out = -1 if n < 0 else 1
    for q, e in factor(n).items():
        if e % 2:
            out *= q
    return out
