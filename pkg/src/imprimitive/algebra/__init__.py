"""Exact arithmetic: integers, rationals, F_p, F_{p^2} and polynomials."""

from fractions import Fraction

from .factoring import rational_factors, rational_roots
from .fields import Fp, Fp2, fp2, quadratic_modulus, sqrt_mod
from .numtheory import (
    divisors,
    factor,
    int_root,
    is_prime,
    is_primitive_root,
    is_rational_square,
    legendre,
    mobius,
    multiplicative_order,
    primes_between,
    primes_up_to,
    rational_root,
    sqrt_mod_int,
    squarefree_kernel,
    valuation,
)
from .poly import DEG_ZERO, Poly, integer_primitive


def Q(value) -> Fraction:
    """Parse an exact rational from int, Fraction or a 'num/den' string."""
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


__all__ = [
    "DEG_ZERO", "Fp", "Fp2", "Fraction", "Poly", "Q", "divisors", "factor", "fp2",
    "int_root", "integer_primitive", "is_prime", "is_primitive_root",
    "is_rational_square", "legendre", "mobius", "multiplicative_order",
    "primes_between", "primes_up_to", "quadratic_modulus", "rational_factors",
    "rational_root", "rational_roots", "sqrt_mod", "sqrt_mod_int",
    "squarefree_kernel", "valuation",
]
