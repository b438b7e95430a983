"""Rational factors of small degree of polynomials over Q.

Only factors of a prescribed degree n (in practice n <= 3) are wanted, so the
search is: factor f mod a few primes, keep the prime with the fewest ways of
forming a degree-n product, Hensel-lift the modular factors and test each
candidate for exact division over Z. A prime with no candidate certifies that
f has no rational factor of degree n.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations

from .numtheory import primes_up_to
from .poly import Poly, integer_primitive

_PRIMES = primes_up_to(5000)[1:]

# Polynomials over Z/m are int lists, low to high, with no trailing zeros.


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod(a, m):
    return _trim([c % m for c in a])


def _add(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m for i in range(n)])


def _sub(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m for i in range(n)])


def _mul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _mod(out, m)


def _divmod(a, b, m):
    """Division by b whose leading coefficient is a unit mod m."""
    inv = pow(b[-1], -1, m)
    rem = list(a)
    if len(rem) < len(b):
        return [], _mod(rem, m)
    quot = [0] * (len(rem) - len(b) + 1)
    for k in range(len(quot) - 1, -1, -1):
        q = rem[k + len(b) - 1] * inv % m
        quot[k] = q
        if q:
            for j, y in enumerate(b):
                rem[k + j] -= q * y
    return _mod(quot, m), _mod(rem[: len(b) - 1], m)


def _monic(a, p):
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gcd(a, b, p):
    while b:
        a, b = b, _divmod(a, b, p)[1]
    return _monic(a, p) if a else a


def _xgcd(a, b, p):
    """(g, s, t) with s*a + t*b = g monic, over F_p."""
    r0, r1, s0, s1, t0, t1 = a, b, [1], [], [], [1]
    while r1:
        q, r = _divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1, p), p)
        t0, t1 = t1, _sub(t0, _mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return [c * inv % p for c in r0], [c * inv % p for c in s0], [c * inv % p for c in t0]


def _powmod(base, e, f, p):
    result, base = [1], _divmod(base, f, p)[1]
    while e:
        if e & 1:
            result = _divmod(_mul(result, base, p), f, p)[1]
        base = _divmod(_mul(base, base, p), f, p)[1]
        e >>= 1
    return result


def _ddf(f, p, maxd):
    """Distinct-degree factorization of monic squarefree f, degrees <= maxd."""
    out = []
    h = [0, 1]
    for d in range(1, maxd + 1):
        if len(f) - 1 < 2 * d:
            # what is left has no factor of degree < d, so it is irreducible
            if 1 <= len(f) - 1 <= maxd:
                out.append((len(f) - 1, f))
            break
        h = _powmod(h, p, f, p)
        g = _gcd(f, _sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((d, g))
            f = _divmod(f, g, p)[0]
            h = _divmod(h, f, p)[1]
    return out


def _edf(f, d, p, rng):
    """Split monic f, a product of degree-d irreducibles, for odd p."""
    if len(f) - 1 == d:
        return [f]
    while True:
        a = _trim([rng.randrange(p) for _ in range(len(f) - 1)])
        if len(a) < 2:
            continue
        g = _gcd(f, a, p)
        if 1 < len(g) < len(f):
            break
        b = _sub(_powmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = _gcd(f, b, p) if b else f
        if 1 < len(g) < len(f):
            break
    return _edf(g, d, p, rng) + _edf(_divmod(f, g, p)[0], d, p, rng)


def _hensel(f, g, h, p, target):
    """Lift monic f = g*h mod p (g, h monic coprime) to modulus >= target."""
    _, s, t = _xgcd(g, h, p)
    m = p
    while m < target:
        m2 = m * m
        e = _sub(f, _mul(g, h, m2), m2)
        q, r = _divmod(_mul(s, e, m2), h, m2)
        g = _add(_add(g, _mul(t, e, m2), m2), _mul(q, g, m2), m2)
        h = _add(h, r, m2)
        b = _sub(_add(_mul(s, g, m2), _mul(t, h, m2), m2), [1], m2)
        c, d = _divmod(_mul(s, b, m2), h, m2)
        s = _sub(s, d, m2)
        t = _sub(_sub(t, _mul(t, b, m2), m2), _mul(c, g, m2), m2)
        m = m2
    return g, m


def _int_divides(g: list[int], f: list[int]) -> bool:
    """Does integer g divide integer f in Z[x]?"""
    rem = list(f)
    lg = g[-1]
    for k in range(len(rem) - len(g), -1, -1):
        top = rem[k + len(g) - 1]
        if top % lg:
            return False
        q = top // lg
        if q:
            for j, y in enumerate(g):
                rem[k + j] -= q * y
    return not any(rem)


def _subsets_by_degree(factors, n):
    """Index subsets of factors whose degrees sum to n."""
    out = []
    for k in range(1, n + 1):
        for combo in combinations(range(len(factors)), k):
            if sum(len(factors[i]) - 1 for i in combo) == n:
                out.append(combo)
    return out


def _squarefree_int(f: list[int]) -> list[int]:
    # Squarefree mod some p not dividing lc(f) implies squarefree over Q;
    # this avoids a rational Euclid run (coefficient growth) in the usual case.
    for p in _PRIMES[:20]:
        if f[-1] % p == 0:
            continue
        fp = _mod(f, p)
        d = _trim([(i * c) % p for i, c in enumerate(fp)][1:])
        if d and len(_gcd(fp, d, p)) == 1:
            return f
    return integer_primitive(Poly(f).squarefree_part())


def _modular_factors(f, p, n, rng):
    monic = _monic(_mod(f, p), p)
    facs = []
    for d, g in _ddf(monic, p, n):
        facs.extend(_edf(g, d, p, rng))
    return facs


def _integer_factors(f: list[int], n: int, tries: int = 6) -> list[list[int]]:
    deg = len(f) - 1
    if n < 1 or n > deg:
        return []
    if n == deg:
        return [f]
    rng = random.Random(deg * 1000003 + n)
    best = None
    count = 0
    for p in _PRIMES:
        if f[-1] % p == 0:
            continue
        fp = _mod(f, p)
        d = _trim([(i * c) % p for i, c in enumerate(fp)][1:])
        if len(_gcd(fp, d, p)) > 1:
            continue
        facs = _modular_factors(f, p, n, rng)
        subsets = _subsets_by_degree(facs, n)
        if not subsets:
            return []
        if best is None or len(subsets) < len(best[2]):
            best = (p, facs, subsets)
        count += 1
        if count >= tries:
            break
    if best is None:
        raise ArithmeticError("no suitable prime found")
    p, facs, subsets = best
    lc = f[-1]
    norm = math.isqrt(sum(c * c for c in f)) + 1
    target = 2 * abs(lc) * (2**n) * norm + 1
    monic_f = _monic(_mod(f, p), p)
    # Each modular factor lifts uniquely; products of lifts lift products.
    m = p
    while m < target:
        m *= m
    lc_inv = pow(lc, -1, m)
    lifted_f = [c * lc_inv % m for c in f]
    lifted = {}
    for i in sorted({i for s in subsets for i in s}):
        h = _divmod(monic_f, facs[i], p)[0]
        lifted[i], _ = _hensel(lifted_f, facs[i], h, p, target)
    out = []
    for combo in subsets:
        g = [1]
        for i in combo:
            g = _mul(g, lifted[i], m)
        cand = [c * lc % m for c in g]
        cand = [c - m if c > m // 2 else c for c in cand]
        cont = 0
        for c in cand:
            cont = math.gcd(cont, c)
        cand = [c // cont for c in cand]
        if cand[-1] < 0:
            cand = [-c for c in cand]
        if _int_divides(cand, f):
            out.append(cand)
    return out


def rational_factors(f: Poly, n: int) -> list[Poly]:
    """All monic squarefree rational factors of degree n of f (f nonzero).

    For squarefree f this is every monic degree-n divisor in Q[x].
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    ints = _squarefree_int(integer_primitive(f))
    out = [Poly(g).monic() for g in _integer_factors(ints, n)]
    return sorted(out, key=lambda g: [Fraction(c) for c in g.c])


def rational_roots(f: Poly) -> list[Fraction]:
    """Distinct rational roots of f, sorted, each verified by evaluation."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    roots = sorted(-g.c[0] for g in rational_factors(f, 1))
    for r in roots:
        if f(r) != 0:
            raise ArithmeticError(f"spurious root {r}")
    return roots
