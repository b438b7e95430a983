"""Prime-by-prime scans: local index, primitivity, cyclic reduction, and the
multiplicative and real-quadratic analogues.

Work is split into blocks of consecutive primes; with workers > 1 the blocks
go to a process pool and the results are merged back in prime order, so the
output never depends on scheduling.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import fp2, is_primitive_root, multiplicative_order, primes_between, sqrt_mod_int
from .classify import Classification
from .curves import ECPoint, WeierstrassCurve, integral_model
from .reduction import (
    MAX_PRIME,
    LocalIndexRecord,
    raw_count_points,
    raw_group_structure,
    raw_point_order,
)

KINDS = ("elliptic-index", "elliptic-primitive", "cyclic-reduction", "multiplicative", "quad-field")
BLOCK = 256
WITNESS_WARN = 10**3


@dataclass
class ScanReport:
    kind: str
    bound: int
    ells: tuple = ()
    records: list = field(default_factory=list)
    bad_primes: list = field(default_factory=list)
    successes: int = 0
    scanned: int = 0
    # primes at which the property fails; for elliptic-index these are the
    # counterexamples (no l in ells divides the index)
    counterexamples: list = field(default_factory=list)
    start: int = 2

    def __post_init__(self):
        assert all(a.p <= b.p for a, b in zip(self.records, self.records[1:])), "records must be sorted by p"
        assert 0 <= self.successes <= self.scanned

    @property
    def density(self) -> Fraction:
        return Fraction(self.successes, self.scanned) if self.scanned else Fraction(0)

    @property
    def first_witness(self) -> int | None:
        return self.counterexamples[0] if self.counterexamples else None

    def summary(self) -> dict:
        return {
            "kind": self.kind,
            "bound": self.bound,
            "ells": list(self.ells),
            "scanned": self.scanned,
            "successes": self.successes,
            "density": f"{float(self.density):.6f}",
            "density_exact": f"{self.density.numerator}/{self.density.denominator}",
            "counterexamples": len(self.counterexamples),
            "first_witness": self.first_witness,
            "bad_primes": list(self.bad_primes),
        }


def _check_bound(bound: int):
    if bound > MAX_PRIME:
        raise ValueError(f"bound {bound} exceeds {MAX_PRIME}")


def _blocks(primes, size=BLOCK):
    return [primes[i : i + size] for i in range(0, len(primes), size)]


def _run(fn, args, primes, workers: int):
    """fn(args, block) per block; results concatenated in prime order."""
    if workers < 1:
        raise ValueError("workers must be >= 1")
    blocks = _blocks(primes)
    if workers == 1 or len(blocks) == 1:
        parts = [fn(args, b) for b in blocks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(fn, [args] * len(blocks), blocks))
    return [r for part in parts for r in part]


# -- elliptic scans ---------------------------------------------------------


@dataclass(frozen=True)
class _CurveJob:
    a: tuple
    disc: int
    P: tuple | None  # (x, y) as Fractions, or None for curve-only scans
    ells: tuple
    cyclic: bool


def _prepare(E: WeierstrassCurve, P: ECPoint | None, ells=(), cyclic=False) -> _CurveJob:
    Ei, mp = integral_model(E)
    Pi = None
    if P is not None:
        Q = mp.push(P, Ei)
        Pi = None if Q.is_zero() else (Fraction(Q.x), Fraction(Q.y))
    a = tuple(int(Fraction(c)) for c in Ei.ainvs)
    return _CurveJob(a, abs(Fraction(Ei.disc).numerator), Pi, tuple(ells), cyclic)


def _reduce_xy(P, p):
    """Reduce an affine point of an integral model; None when it hits O."""
    x, y = P
    if x.denominator % p == 0:
        return None
    return (x.numerator * pow(x.denominator, -1, p) % p, y.numerator * pow(y.denominator, -1, p) % p)


def _curve_block(job: _CurveJob, primes):
    out = []
    for p in primes:
        if job.disc % p == 0:
            out.append((p, None))
            continue
        a = tuple(c % p for c in job.a)
        N = raw_count_points(a, p)
        if job.P is None:
            order = N
        else:
            Pp = _reduce_xy(job.P, p)
            order = raw_point_order(a, Pp, N, p)
        index = N // order
        cyclic = None
        if job.cyclic:
            # a point of order N already proves cyclicity
            cyclic = (job.P is not None and index == 1) or raw_group_structure(a, p, N)[0] == 1
        out.append((p, LocalIndexRecord(p, N, order, index, {l: index % l == 0 for l in job.ells}, cyclic)))
    return out


def _curve_scan(kind, job, bound, workers, start, success, counter, skip=lambda p: False):
    _check_bound(bound)
    primes = [p for p in primes_between(max(2, start), bound) if not skip(p)]
    rep = ScanReport(kind, bound, job.ells, start=start)
    for p, rec in _run(_curve_block, job, primes, workers):
        if rec is None:
            rep.bad_primes.append(p)
            continue
        rep.records.append(rec)
        rep.scanned += 1
        if success(rec):
            rep.successes += 1
        if counter(rec):
            rep.counterexamples.append(p)
    return rep


def scan_elliptic_index(E, P, ells, bound: int, workers: int = 1, start: int = 2) -> ScanReport:
    """Does some l in ells divide [E(F_p) : <P>] at every good p <= bound, p not in ells?

    A success is a prime where it does; the others are counterexamples.
    """
    ells = tuple(ells) if isinstance(ells, (tuple, list)) else (ells,)
    job = _prepare(E, P, ells)

    def hit(rec):
        return any(rec.index % l == 0 for l in ells)

    return _curve_scan(
        "elliptic-index", job, bound, workers, start, hit, lambda r: not hit(r), skip=lambda p: p in ells
    )


def scan_elliptic_primitive(E, P, bound: int, workers: int = 1, start: int = 2) -> ScanReport:
    """Is P mod p a generator of E(F_p), for good p > 5?"""
    job = _prepare(E, P, (), cyclic=False)
    return _curve_scan(
        "elliptic-primitive",
        job,
        bound,
        workers,
        start,
        lambda r: r.index == 1,
        lambda r: r.index != 1,
        skip=lambda p: p <= 5,
    )


def scan_cyclic_reduction(E, bound: int, workers: int = 1, start: int = 2) -> ScanReport:
    job = _prepare(E, None, (), cyclic=True)
    return _curve_scan(
        "cyclic-reduction", job, bound, workers, start, lambda r: bool(r.cyclic), lambda r: not r.cyclic
    )


# -- multiplicative ---------------------------------------------------------


def _mult_block(x: Fraction, primes):
    out = []
    for p in primes:
        if x.numerator % p == 0 or x.denominator % p == 0:
            out.append((p, None))
            continue
        v = x.numerator * pow(x.denominator, -1, p) % p
        order = multiplicative_order(v, p)
        out.append((p, LocalIndexRecord(p, p - 1, order, (p - 1) // order)))
    return out


def scan_multiplicative(x, bound: int, workers: int = 1, start: int = 2) -> ScanReport:
    """Is x a primitive root mod p, for p <= bound outside the support of x?"""
    x = Fraction(x)
    if x in (0, 1, -1):
        raise ValueError("x must not be 0 or +-1")
    _check_bound(bound)
    primes = primes_between(max(2, start), bound)
    rep = ScanReport("multiplicative", bound, start=start)
    for p, rec in _run(_mult_block, x, primes, workers):
        if rec is None:
            rep.bad_primes.append(p)
            continue
        rep.records.append(rec)
        rep.scanned += 1
        if rec.index == 1:
            rep.successes += 1
        else:
            rep.counterexamples.append(p)
    return rep


# -- the real quadratic example ---------------------------------------------

# In Q(sqrt 5) with eps = (1 + sqrt 5)/2, a root of T^2 - T - 1:
# pi = eps^2 - 4, y = -3 pi, x = y^15.


def _x_in_residue_field(eps):
    pi = eps * eps - 4
    return (pi * -3) ** 15


def verify_example_31(bound: int = 10**4) -> ScanReport:
    """Primes of Q(sqrt 5) of norm <= bound at which x generates the residue field."""
    rep = ScanReport("quad-field", bound)
    for p in primes_between(2, bound):
        if p == 5:
            rep.bad_primes.append(p)  # ramified, x = 0 mod sqrt 5
            continue
        if p % 5 in (1, 4):
            # split: T^2 - T - 1 has two roots r, eps -> r
            s = sqrt_mod_int(5, p)
            half = pow(2, -1, p)
            for r in sorted({(1 + s) * half % p, (1 - s) * half % p}):
                x = _x_in_residue_field(r) % p
                label = f"({p}, eps-{r})"
                if x == 0:
                    rep.bad_primes.append(p)
                    continue
                ok = is_primitive_root(x, p)
                order = multiplicative_order(x, p)
                _record(rep, p, p - 1, order, ok, label, "split")
        else:
            if p * p > bound:
                continue
            # inert: residue field F_p[T]/(T^2 - T - 1) = F_{p^2}
            eps = fp2(0, 1, p, modulus=(1, 1))
            x = _x_in_residue_field(eps)
            if not x:
                rep.bad_primes.append(p)
                continue
            _record(rep, p, p * p - 1, x.order(), x.is_generator(), f"({p})", "inert")
    return rep


def _record(rep, p, n, order, ok, label, kind):
    rep.records.append(LocalIndexRecord(p, n, order, n // order, {"prime": label, "type": kind, "norm": n + 1}))
    rep.scanned += 1
    if ok:
        rep.successes += 1
    else:
        rep.counterexamples.append(label)


def example_31_primes(rep: ScanReport) -> list[str]:
    return [r.flags["prime"] for r in rep.records if r.index == 1]


# -- consistency ------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    status: str  # consistent | hard-failure | suspicious
    message: str
    witness: int | None = None

    @property
    def ok(self) -> bool:
        return self.status != "hard-failure"


def consistency_check(cls: Classification, rep: ScanReport, warn_below: int = WITNESS_WARN) -> Verdict:
    """Compare a classification with an elliptic-index scan of the same (E, P, l).

    Imprimitive points must have no counterexample prime at all; for a point
    classified primitive a witness prime should turn up, and not finding one
    below warn_below is reported as suspicious.
    """
    if rep.kind != "elliptic-index" or rep.ells != (cls.ell,):
        raise ValueError("need an elliptic-index scan at the classified l")
    if cls.locally_ell_imprimitive:
        if rep.counterexamples:
            return Verdict("hard-failure", f"classified imprimitive but l does not divide the index at p={rep.first_witness}", rep.first_witness)
        return Verdict("consistent", f"no counterexample up to {rep.bound}")
    w = rep.first_witness
    if w is None or w > warn_below:
        return Verdict("suspicious", f"classified primitive but no witness prime below {min(warn_below, rep.bound)}", w)
    return Verdict("consistent", f"witness prime {w}", w)


def gcd_of_indices(rep: ScanReport) -> int:
    g = 0
    for r in rep.records:
        g = math.gcd(g, r.index)
    return g
