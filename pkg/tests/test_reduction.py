import pytest

from imprimitive.algebra import primes_between
from imprimitive.curves import WeierstrassCurve
from imprimitive.families import registry_entry
from imprimitive.reduction import (
    BadReduction,
    count_points,
    count_points_naive,
    group_structure,
    has_good_reduction,
    hasse_ok,
    local_index,
    point_order,
    reduce,
)


def test_reduce_bad_primes():
    inst = registry_entry("5835.c2")
    with pytest.raises(BadReduction):
        reduce(inst.curve, [inst.point], 389)
    with pytest.raises(BadReduction):
        reduce(WeierstrassCurve(0, 605, 0, -3025, 0), [], 11)


def test_reduce_good_prime():
    red, pts = reduce(WeierstrassCurve(0, 0, 0, 0, 1), [], 5)
    assert red.p == 5
    assert pts == []


def test_count_points_examples():
    assert count_points(WeierstrassCurve(0, 0, 0, 0, 1).reduce_mod(5)) == 6
    assert count_points(WeierstrassCurve(0, 0, 0, -1, 0).reduce_mod(5)) == 8


def test_count_points_hasse_window(rng):
    for _ in range(30):
        a = [rng.randrange(7) for _ in range(5)]
        try:
            E = WeierstrassCurve(*a).reduce_mod(7)
        except ValueError:
            continue
        assert 3 <= count_points(E) <= 13


def test_count_points_matches_enumeration():
    E = WeierstrassCurve(1, -1, 1, -3, 4)
    for p in primes_between(2, 200):
        if has_good_reduction(E, p):
            Ep = E.reduce_mod(p)
            N = count_points(Ep)
            assert N == count_points_naive(Ep)
            assert hasse_ok(N, p)


def test_point_order_examples():
    Ep = WeierstrassCurve(0, -7, 0, 3, 0).reduce_mod(11)
    assert point_order(Ep, Ep.O) == 1
    assert point_order(Ep, Ep.point(0, 0)) == 2


def test_point_order_divides_group_order(rng):
    E = WeierstrassCurve(0, 1, 1, -2, 0)
    for p in (101, 211, 307):
        Ep = E.reduce_mod(p)
        N = count_points(Ep)
        for _ in range(5):
            P = Ep.random_point(rng)
            n = point_order(Ep, P)
            assert N % n == 0
            assert Ep.mul(n, P).is_zero()
            assert all(not Ep.mul(n // q, P).is_zero() for q in (2, 3, 5, 7) if n % q == 0)


def test_group_structure():
    gs = group_structure(WeierstrassCurve(0, 0, 0, -1, 0).reduce_mod(5))
    assert gs.n1 % 2 == 0
    assert gs.n1 * gs.n2 == 8
    E = WeierstrassCurve(0, 1, 1, -2, 0)
    for p in primes_between(3, 300):
        if has_good_reduction(E, p):
            gs = group_structure(E.reduce_mod(p))
            assert (p - 1) % gs.n1 == 0
            assert gs.n2 % gs.n1 == 0


def test_group_structure_sampled_matches_exhaustive():
    E = WeierstrassCurve(0, 0, 0, -4, 0)
    for p in primes_between(3, 150):
        if has_good_reduction(E, p):
            Ep = E.reduce_mod(p)
            a = group_structure(Ep, exhaustive=True)
            b = group_structure(Ep, exhaustive=False)
            assert (a.n1, a.n2) == (b.n1, b.n2)


def test_local_index_generator_of_cyclic_group():
    E = WeierstrassCurve(0, 0, 0, 0, 1)
    Ep = E.reduce_mod(5)
    N = count_points(Ep)
    gen = next(P for P in Ep.points() if point_order(Ep, P) == N)
    rec = local_index(Ep, gen)
    assert rec.index == 1
    assert rec.cyclic


def test_local_index_5835_smallest_good_prime():
    inst = registry_entry("5835.c2")
    p = next(p for p in primes_between(2, 50) if has_good_reduction(inst.curve, p) and p != 5)
    _, (P,) = reduce(inst.curve, [inst.point], p)
    rec = local_index(inst.curve.reduce_mod(p), P, ells=(5,))
    assert rec.index % 5 == 0
    assert rec.flags[5]


def test_local_index_12100_small_primes():
    inst = registry_entry("12100.j1")
    for p in primes_between(7, 100):
        if not has_good_reduction(inst.curve, p) or inst.point.x.denominator % p == 0:
            continue
        _, (P,) = reduce(inst.curve, [inst.point], p)
        rec = local_index(inst.curve.reduce_mod(p), P)
        assert rec.index % 2 == 0 or rec.index % 3 == 0
