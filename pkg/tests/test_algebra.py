from fractions import Fraction

import pytest

from imprimitive.algebra import (
    Fp,
    Poly,
    Q,
    factor,
    fp2,
    is_prime,
    is_primitive_root,
    legendre,
    multiplicative_order,
    primes_up_to,
    rational_factors,
    rational_roots,
    sqrt_mod,
    sqrt_mod_int,
)
from imprimitive.curves import WeierstrassCurve


def _trial_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


def test_is_prime_examples():
    assert is_prime(2)
    assert is_prime(389)
    assert not is_prime(5835)


def test_is_prime_matches_trial_division():
    assert [n for n in range(3000) if is_prime(n)] == [n for n in range(3000) if _trial_prime(n)]
    assert primes_up_to(3000) == [n for n in range(3000) if _trial_prime(n)]


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**61 - 1))


def test_factor_examples():
    assert factor(5835) == {3: 1, 5: 1, 389: 1}
    assert factor(1) == {}
    E = WeierstrassCurve(0, 605, 0, -3025, 0)
    assert factor(abs(int(E.disc))) == {2: 4, 5: 9, 11: 6}


def test_factor_roundtrip(rng):
    for _ in range(50):
        n = rng.randint(2, 10**12)
        f = factor(n)
        prod = 1
        for q, e in f.items():
            assert is_prime(q)
            prod *= q**e
        assert prod == n


def test_legendre():
    assert legendre(2, 7) == 1
    assert legendre(0, 7) == 0
    assert legendre(5, 11) == 1
    for p in (3, 5, 7, 11, 13, 101):
        squares = {x * x % p for x in range(1, p)}
        assert all(legendre(a, p) == (1 if a in squares else -1) for a in range(1, p))


def test_sqrt_mod():
    assert sqrt_mod(Fp(2, 7)) in (Fp(3, 7), Fp(4, 7))
    assert sqrt_mod(Fp(3, 7)) is None
    assert sqrt_mod(Fp(0, 7)) == Fp(0, 7)
    for p in (3, 5, 13, 17, 97, 10007):
        for a in range(0, min(p, 200)):
            r = sqrt_mod_int(a, p)
            if legendre(a, p) == -1:
                assert r is None
            else:
                assert r * r % p == a % p


def test_primitive_roots_by_enumeration():
    for p in (3, 7, 11, 23, 101):
        for g in range(1, p):
            order = next(k for k in range(1, p) if pow(g, k, p) == 1)
            assert multiplicative_order(g, p) == order
            assert is_primitive_root(g, p) == (order == p - 1)


def test_fp2_field_axioms(rng):
    p = 11
    elems = [fp2(rng.randrange(p), rng.randrange(p), p) for _ in range(30)]
    one = fp2(1, 0, p)
    for a in elems:
        if a:
            assert a * a.inverse() == one
        for b in elems[:5]:
            assert a * b == b * a
            assert (a + b) * a == a * a + b * a


def test_fp2_group_order():
    # the multiplicative group of F_p2 is cyclic of order p^2 - 1
    p = 7
    orders = {fp2(a, b, p).order() for a in range(p) for b in range(p) if (a, b) != (0, 0)}
    assert max(orders) == p * p - 1


def test_rational_roots_examples():
    x = Poly.x()
    assert sorted(rational_roots(x**3 - x)) == [-1, 0, 1]
    assert rational_roots(x * x - 2) == []
    assert 0 in rational_roots(Poly([0, 12, -28, 4]))


def test_rational_roots_of_products(rng):
    x = Poly.x()
    for _ in range(20):
        roots = {Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(3)}
        f = Poly([1])
        for r in roots:
            f = f * (x - r)
        f = f * (x * x + 3)
        assert set(rational_roots(f)) == roots


def test_rational_factors_by_degree():
    x = Poly.x()
    f = (x * x - 2) * (x * x + x + 1) * (x**3 - 5)
    quads = rational_factors(f, 2)
    assert len(quads) == 2
    for g in quads:
        assert g.degree == 2
        assert (f % g).is_zero()


def test_Q_parses_strings():
    assert Q("3/4") == Fraction(3, 4)
    assert Q("-7") == -7
    with pytest.raises(ValueError):
        Q("1/x")
