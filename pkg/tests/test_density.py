from fractions import Fraction
from itertools import combinations, product

import pytest

from imprimitive import density as dn


def test_named_group_orders():
    assert dn.g2_group().order == 8
    assert dn.g3_group().order == 36
    assert dn.unipotent_group().order == 4
    assert dn.level6_group().order == 144
    assert dn.enumerate_group([dn.identity(3, 5)], 5).order == 1


def test_enumeration_is_closed():
    for G in (dn.g2_group(), dn.g3_group(), dn.level6_group()):
        assert G.is_closed()


def test_bad_sets():
    assert dn.bad_set(dn.unipotent_group(), 2)[1] == 4
    S, s = dn.bad_set(dn.g2_group(), 2)
    assert s == 6
    # the two elements outside S have a = b = 1
    for M in dn.g2_group().elements - S:
        assert (M[1], M[5]) == (1, 1)
    assert dn.bad_set(dn.enumerate_group([dn.identity(3, 2)], 2), 2)[1] == 1
    assert dn.bad_set(dn.g3_group(), 3)[1] == 21


def test_composite_bad_sets():
    G6 = dn.level6_group()
    assert dn.bad_set_composite(G6)[1] == G6.order
    # a direct product of the two unobstructed groups is not totally bad
    prod = [dn.crt_mat({2: a, 3: b}, 6) for a in dn.g2_group().elements for b in dn.g3_group().elements]
    G = dn.MatGroup(6, 3, (), frozenset(prod))
    assert dn.bad_set_composite(G)[1] < G.order
    # at prime level the composite set is the plain one
    assert dn.bad_set_composite(dn.g2_group()) == dn.bad_set(dn.g2_group(), 2)


def test_generic_factor():
    assert dn.affine_group(2).order == 24
    ratios = [dn.generic_bad_ratio(l) for l in (2, 3, 5, 7)]
    assert ratios == sorted(ratios, reverse=True)
    for l in (2, 3, 5, 7, 11, 101):
        assert 0 < dn.generic_factor(l) < 1


def test_generic_ratio_formula_matches_enumeration():
    for l in (5, 7, 11, 13):
        assert dn.generic_bad_ratio(l) == Fraction(l**3 - l - 1, l * l * (l - 1) * (l * l - 1))


def test_artin():
    assert abs(dn.artin_constant(100).value - 0.3739) < 1e-3
    assert dn.multiplicative_factor(2) == Fraction(1, 2)
    parts = [v for _, v in dn.artin_partial_products(200)]
    assert all(a > b for a, b in zip(parts, parts[1:]))
    a = dn.artin_constant(10**4)
    assert abs(a.value - 0.373956) < 1e-4
    assert a.lower <= dn.ARTIN <= a.value


def test_truncated_density_unipotent():
    rep = dn.truncated_density(dn.unipotent_group(), 100)
    assert rep.vanishing and rep.value == 0
    assert rep.certificate["level"] == 2


def test_truncated_density_level6():
    G = dn.level6_group()
    rep = dn.truncated_density(G, 100)
    assert rep.vanishing and rep.certificate == {"level": 6, "order": 144, "bad": 144}
    assert rep.level_factor == rep.moebius_sum
    assert not dn.truncated_density(G.project(2), 100).vanishing
    assert not dn.truncated_density(G.project(3), 100).vanishing


def test_truncated_density_generic():
    rep = dn.truncated_density(None, 200)
    assert rep.value > 0
    assert not rep.vanishing


def test_multiplicative_preset():
    assert abs(dn.multiplicative_density_preset(2) - dn.ARTIN) < 1e-12
    # x = 5: h = 5 is 1 mod 4, correction factor 1 + 1/19
    assert abs(dn.multiplicative_density_preset(5) - dn.ARTIN * 20 / 19) < 1e-12
    with pytest.raises(ValueError):
        dn.multiplicative_density_preset(4)


def test_lemma41_examples():
    triv = dn.enumerate_group([dn.identity(3, 3)], 3)
    assert dn.lemma41_check(triv)["hyp1"] and dn.lemma41_check(triv)["concl2"]
    u = dn.lemma41_check(dn.unipotent_group())
    assert u["hyp1"] and u["concl2"] and u["coinvariant_dim"] == 2
    assert not dn.lemma41_check(dn.g2_group())["hyp1"]


def test_lemma41_random_suite():
    out = dn.lemma41_suite((2, 3, 5), count=100, seed=7)
    for ell, r in out.items():
        assert r["groups"] == 100
        assert r["violations"] == 0


@pytest.mark.parametrize("ell", [2, 3])
def test_lemma41_two_dimensional_exhaustive(ell):
    # every subgroup of GL_2(F_l) on at most two generators: if each element
    # fixes a line pointwise, the group fixes a line or is trivial on a quotient line
    gl2 = [M for M in product(range(ell), repeat=4) if dn.is_invertible(M, 2, ell)]
    checked = 0
    for gens in list(combinations(gl2, 1)) + list(combinations(gl2, 2)):
        G = dn.enumerate_group(gens, ell, 2)
        r = dn.lemma41_check(G)
        if r["hyp1"]:
            checked += 1
            assert r["concl2"], gens
    assert checked > 0


def test_group_too_large():
    with pytest.raises(dn.GroupTooLarge):
        dn.enumerate_group(list(dn.affine_group(5).elements)[:40], 5, cap=100)
