"""Decision procedure for local l-imprimitivity of a rational point.

P in E(Q) of infinite order is locally l-imprimitive iff one of
  (A) E(Q) has a point of order l and P in l E(Q);
  (B) E[l] is fully rational;
  (C) some l-isogeny phi: E' -> E over Q has kernel generated by a rational
      point of E' and P in phi(E'(Q)).
The point is a non-trivial example when (C) holds but (A) and (B) do not.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import rational_roots
from .curves import ECPoint, WeierstrassCurve
from .isogeny import SUPPORTED, IsogenyMap, isogenies_into
from .rational_points import (
    TorsionPointError,
    divide_point,
    full_ell_torsion_rational,
    point_order,
    rational_torsion_points,
)


@dataclass(frozen=True)
class WitnessC:
    isogeny: IsogenyMap
    kernel_generator: ECPoint
    preimage: ECPoint

    def to_dict(self) -> dict:
        return {
            "source_curve": [str(a) for a in self.isogeny.domain.ainvs],
            "kernel_generator": [str(c) for c in self.kernel_generator.xy()],
            "preimage": [str(c) for c in self.preimage.xy()],
        }


@dataclass
class Classification:
    ell: int
    condA: bool
    condB: bool
    condC: bool
    witness_A: ECPoint | None = None
    witness_C: WitnessC | None = None
    reason_B: str = ""
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        assert self.condA == (self.witness_A is not None)
        assert self.condC == (self.witness_C is not None)

    @property
    def locally_ell_imprimitive(self) -> bool:
        return self.condA or self.condB or self.condC

    @property
    def nontrivial(self) -> bool:
        return self.condC and not self.condA and not self.condB

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "condA": self.condA,
            "condB": self.condB,
            "condC": self.condC,
            "locally_ell_imprimitive": self.locally_ell_imprimitive,
            "nontrivial": self.nontrivial,
            "witness_A": [str(c) for c in self.witness_A.xy()] if self.witness_A is not None else None,
            "witness_C": self.witness_C.to_dict() if self.witness_C is not None else None,
            "reason_B": self.reason_B,
        }


def condition_A(E: WeierstrassCurve, P: ECPoint, ell: int) -> tuple[bool, ECPoint | None]:
    if not rational_torsion_points(E, ell):
        return False, None
    div = divide_point(E, P, ell)
    if not div:
        return False, None
    return True, div.points[0]


def condition_B(E: WeierstrassCurve, ell: int) -> tuple[bool, str]:
    return full_ell_torsion_rational(E, ell)


def _rational_kernel_generator(phi: IsogenyMap) -> ECPoint | None:
    E1 = phi.domain
    for x0 in rational_roots(phi.kernel):
        for T in E1.lift_x(x0):
            if E1.mul(phi.degree, T).is_zero():
                return T
    return None


def _rational_preimage(phi: IsogenyMap, P: ECPoint) -> ECPoint | None:
    for x0 in rational_roots(phi.xn - phi.xd * P.x):
        for Q in phi.domain.lift_x(x0):
            if phi(Q) == P:
                return Q
    return None


def condition_C(E: WeierstrassCurve, P: ECPoint, ell: int) -> tuple[bool, WitnessC | None]:
    if ell not in SUPPORTED:
        raise ValueError(f"unsupported l = {ell}")
    for phi in isogenies_into(E, ell):
        T = _rational_kernel_generator(phi)
        if T is None:
            continue
        Q = _rational_preimage(phi, P)
        if Q is not None:
            return True, WitnessC(phi, T, Q)
    return False, None


def classify(E: WeierstrassCurve, P: ECPoint, ell: int) -> Classification:
    if P.is_zero() or point_order(E, P).is_torsion:
        raise TorsionPointError(f"{P} is a torsion point")
    a, wa = condition_A(E, P, ell)
    b, why = condition_B(E, ell)
    c, wc = condition_C(E, P, ell)
    return Classification(ell, a, b, c, wa, wc, why)
