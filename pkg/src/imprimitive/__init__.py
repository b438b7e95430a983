"""Locally imprimitive points on elliptic curves over Q.

Exact constructions of the curve families, the classifier, prime-by-prime
scans and the Galois-side density machinery.
"""

from .algebra import Q
from .classify import Classification, classify
from .curves import ECPoint, WeierstrassCurve
from .families import BadParameter, FamilyInstance, family, registry, registry_entry
from .rational_points import TorsionPointError
from .scans import (
    ScanReport,
    scan_cyclic_reduction,
    scan_elliptic_index,
    scan_elliptic_primitive,
    scan_multiplicative,
    verify_example_31,
)

__version__ = "0.1.0"

__all__ = [
    "BadParameter", "Classification", "ECPoint", "FamilyInstance", "Q", "ScanReport",
    "TorsionPointError", "WeierstrassCurve", "classify", "family", "registry",
    "registry_entry", "scan_cyclic_reduction", "scan_elliptic_index",
    "scan_elliptic_primitive", "scan_multiplicative", "verify_example_31",
]
