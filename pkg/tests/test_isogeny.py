from fractions import Fraction

import pytest

from imprimitive.algebra import Poly
from imprimitive.curves import NonCurve, WeierstrassCurve, isomorphisms
from imprimitive.families import b_of_t, tate5_curve, tate5_isogeny, tate7_isogeny
from imprimitive.isogeny import (
    KernelSubgroup,
    _good_primes,
    composes_to_mult,
    dual,
    rational_isogenies,
    rational_kernels,
    three_isogeny_deuring,
    two_isogeny,
    two_isogeny_dual_corrected,
    velu,
)


def test_two_isogeny_codomain():
    E, E1, phi, _ = two_isogeny(0, -1)
    assert E == WeierstrassCurve(0, 0, 0, -1, 0)
    assert E1 == WeierstrassCurve(0, 0, 0, 4, 0)
    assert phi(E.point(0, 0)).is_zero()
    assert phi(E.O).is_zero()


def test_d_prime_is_16b():
    for a, b in ((3, -7), (Fraction(1, 2), 5), (605, -3025)):
        a, b = Fraction(a), Fraction(b)
        d = a * a - 4 * b
        assert (-2 * a) ** 2 - 4 * d == 16 * b


def test_two_isogeny_matches_velu():
    for a, b in ((3, -7), (1, 2), (605, -3025)):
        E, E1, phi, _ = two_isogeny(a, b)
        ref = velu(E, KernelSubgroup.from_poly(2, Poly.x()))
        assert ref.codomain.j == E1.j
        assert any(
            (ref.then_model(mp).xn * phi.xd - phi.xn * ref.then_model(mp).xd).is_zero()
            for mp in isomorphisms(ref.codomain, E1)
        )


def test_displayed_dual_fails_and_corrected_dual_works():
    _, _, phi, phi_hat = two_isogeny(3, -7)
    primes = _good_primes([phi, phi_hat], 3)
    assert not composes_to_mult(phi_hat, phi, symbolic=False, primes=primes, points=20)
    assert composes_to_mult(two_isogeny_dual_corrected(3, -7), phi, primes=primes, points=20)


def test_dual_of_two_isogeny_is_corrected_form():
    _, _, phi, _ = two_isogeny(3, -7)
    psi = dual(phi)
    ref = two_isogeny_dual_corrected(3, -7)
    assert (psi.xn * ref.xd - ref.xn * psi.xd).is_zero()


def test_deuring_point_at_t2():
    t = Fraction(2)
    E1, E, phi = three_isogeny_deuring(1, b_of_t(t))
    assert phi(E1.point(1, t)).xy() == (Fraction(19, 4), Fraction(-99, 8))
    assert phi(E1.point(0, 0)).is_zero()
    assert phi.kernel == Poly.x()


def test_deuring_singular_parameters():
    with pytest.raises(NonCurve):
        three_isogeny_deuring(1, Fraction(1, 27))
    with pytest.raises(NonCurve):
        three_isogeny_deuring(1, 0)


def test_deuring_discriminant():
    for a, b in ((1, 2), (Fraction(3, 2), -5), (2, Fraction(1, 7))):
        a, b = Fraction(a), Fraction(b)
        E1, E, _ = three_isogeny_deuring(a, b)
        assert E1.disc == b**3 * (a**3 - 27 * b)
        assert E.disc == b * (a**3 - 27 * b) ** 3


def test_dual_of_deuring_on_source_point():
    t = Fraction(2)
    E1, E, phi = three_isogeny_deuring(1, b_of_t(t))
    psi = dual(phi)
    P1 = E1.point(1, t)
    assert psi(phi(P1)) == E1.mul(3, P1)


def test_biduality():
    E1, E, phi = three_isogeny_deuring(1, 3)
    psi = dual(phi)
    back = dual(psi)
    assert back.codomain == phi.codomain
    assert back.kernel == phi.kernel


@pytest.mark.parametrize("ell", [2, 3, 5, 7])
def test_dual_composes_to_multiplication(ell):
    maps = {
        2: two_isogeny(3, -7)[2],
        3: three_isogeny_deuring(1, Fraction(-5, 2))[2],
        5: tate5_isogeny(-15),
        7: tate7_isogeny(Fraction(4, 7)),
    }
    phi = maps[ell]
    psi = dual(phi)
    primes = _good_primes([phi, psi], 3)
    assert composes_to_mult(psi, phi, primes=primes, points=50)


def test_velu_on_tate5_matches_quotient_j():
    E = tate5_curve(-15)
    phi = velu(E, KernelSubgroup.from_point(E, E.point(0, 0), 5))
    assert phi.codomain.j == WeierstrassCurve(16, 15, 15, 14550, 232860).j


def test_push_of_infinity():
    _, _, phi = three_isogeny_deuring(1, 3)
    assert phi(phi.domain.O).is_zero()


def test_rational_isogenies_generic_two():
    E = WeierstrassCurve(0, 3, 0, -7, 0)  # d = 37 is not a square
    ks = rational_isogenies(E, 2)
    assert len(ks) == 1
    assert ks[0][0].poly == Poly.x()


def test_rational_isogenies_deuring_contains_dual_kernel():
    E1, E, phi = three_isogeny_deuring(1, b_of_t(2))
    psi = dual(phi)
    assert psi.kernel in [K.poly for K in rational_kernels(E, 3)]


def test_no_seven_isogeny_on_generic_curve():
    assert rational_kernels(WeierstrassCurve(0, 0, 1, -1, 0), 7) == []
