"""Finite matrix groups over Z/m and the primitive-root density bookkeeping.

Matrices are n x n over Z/m stored as flat tuples, row-major, acting on
column vectors. For a group G at level m and a prime l | m, an element is
bad at l when its reduction sigma mod l has rank(sigma - 1) <= r over F_l,
r = 1 for the 3-dimensional elliptic representation and r = 0 for the
2-dimensional multiplicative one.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .algebra import divisors, factor, is_prime, mobius, primes_up_to

ENUM_CAP = 10**6


class GroupTooLarge(RuntimeError):
    pass


class InconsistentGroups(ValueError):
    pass


# -- matrices ----------------------------------------------------------------


def mat(rows, m: int) -> tuple:
    return tuple(int(v) % m for row in rows for v in row)


def identity(n: int, m: int) -> tuple:
    return tuple(1 % m if i == j else 0 for i in range(n) for j in range(n))


def mat_mul(A, B, n: int, m: int) -> tuple:
    return tuple(
        sum(A[i * n + k] * B[k * n + j] for k in range(n)) % m for i in range(n) for j in range(n)
    )


def _dim(M) -> int:
    return math.isqrt(len(M))


def rank_mod(rows: list[list[int]], ell: int) -> int:
    """Rank over F_l by Gaussian elimination."""
    rows = [[v % ell for v in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, ell)
        rows[rank] = [v * inv % ell for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % ell for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _rows(M, n: int) -> list[list[int]]:
    return [list(M[i * n : (i + 1) * n]) for i in range(n)]


def minus_identity(M, n: int, ell: int) -> list[list[int]]:
    return [[(M[i * n + j] - (i == j)) % ell for j in range(n)] for i in range(n)]


def det_mod(M, n: int, ell: int) -> int:
    return 0 if rank_mod(_rows(M, n), ell) < n else 1


def is_invertible(M, n: int, m: int) -> bool:
    return all(rank_mod(_rows(M, n), q) == n for q in factor(m))


def reduce_mat(M, ell: int) -> tuple:
    return tuple(v % ell for v in M)


def crt_mat(parts: dict, m: int) -> tuple:
    """Combine {l: matrix mod l} into a matrix mod m = prod l."""
    out = []
    length = len(next(iter(parts.values())))
    for idx in range(length):
        v = 0
        for q, M in parts.items():
            c = m // q
            v += M[idx] * c * pow(c, -1, q)
        out.append(v % m)
    return tuple(out)


# -- groups -----------------------------------------------------------------


@dataclass(frozen=True)
class MatGroup:
    m: int
    n: int
    gens: tuple
    elements: frozenset = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def project(self, d: int) -> MatGroup:
        """Image under reduction Z/m -> Z/d for d | m."""
        if self.m % d:
            raise ValueError(f"{d} does not divide {self.m}")
        elems = frozenset(reduce_mat(M, d) for M in self.elements)
        return MatGroup(d, self.n, tuple(reduce_mat(g, d) for g in self.gens), elems)

    def is_closed(self) -> bool:
        E = self.elements
        return identity(self.n, self.m) in E and all(mat_mul(A, B, self.n, self.m) in E for A in E for B in E)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "elements": [list(M) for M in sorted(self.elements)]}


def enumerate_group(gens, m: int, n: int | None = None, cap: int = ENUM_CAP, stop=None) -> MatGroup | None:
    """Closure of gens under multiplication, breadth first.

    stop(M) -> True aborts the enumeration and returns None (used to bail out
    as soon as an element of an unwanted kind turns up).
    """
    gens = tuple(tuple(int(v) % m for v in g) for g in gens)
    if n is None:
        n = _dim(gens[0]) if gens else 1
    for g in gens:
        if not is_invertible(g, n, m):
            raise ValueError(f"generator {g} is not invertible mod {m}")
    e = identity(n, m)
    seen = {e}
    queue = deque([e])
    while queue:
        A = queue.popleft()
        for g in gens:
            B = mat_mul(A, g, n, m)
            if B not in seen:
                if stop is not None and stop(B):
                    return None
                seen.add(B)
                if len(seen) > cap:
                    raise GroupTooLarge(f"group exceeds {cap} elements")
                queue.append(B)
    return MatGroup(m, n, gens, frozenset(seen))


def is_bad(M, n: int, ell: int, r: int = 1) -> bool:
    return rank_mod(minus_identity(reduce_mat(M, ell), n, ell), ell) <= r


def bad_set(G: MatGroup, ell: int, r: int = 1) -> tuple[frozenset, int]:
    """Elements of G whose reduction mod l has rank(sigma - 1) <= r."""
    if G.m % ell:
        raise ValueError(f"l = {ell} does not divide the level {G.m}")
    S = frozenset(M for M in G.elements if is_bad(M, G.n, ell, r))
    return S, len(S)


def bad_set_composite(G: MatGroup, r: int = 1) -> tuple[frozenset, int]:
    """Union over l | m of the elements that are bad at l."""
    S = frozenset(M for M in G.elements if any(is_bad(M, G.n, q, r) for q in factor(G.m)))
    return S, len(S)


def _bad_everywhere(G: MatGroup, r: int) -> int:
    """Elements bad at every l | m (the sets met by the Moebius sum)."""
    return sum(all(is_bad(M, G.n, q, r) for q in factor(G.m)) for M in G.elements)


# -- named groups -----------------------------------------------------------


def unipotent_group() -> MatGroup:
    """{[1 x y; 0 1 0; 0 0 1]} over F_2, the group of the twist construction."""
    gens = [mat([[1, 1, 0], [0, 1, 0], [0, 0, 1]], 2), mat([[1, 0, 1], [0, 1, 0], [0, 0, 1]], 2)]
    return enumerate_group(gens, 2)


def g2_group() -> MatGroup:
    """{[1 a c; 0 1 b; 0 0 1]} over F_2, dihedral of order 8."""
    elems = [mat([[1, a, c], [0, 1, b], [0, 0, 1]], 2) for a, b, c in product(range(2), repeat=3)]
    return enumerate_group(elems, 2)


def g3_group() -> MatGroup:
    """{[d e f; 0 g 0; 0 0 1]} over F_3 with d, g nonzero, of order 36."""
    elems = [
        mat([[d, e, f], [0, g, 0], [0, 0, 1]], 3) for d, g in product((1, 2), repeat=2) for e, f in product(range(3), repeat=2)
    ]
    return enumerate_group(elems, 3)


def level6_group() -> MatGroup:
    """Pairs (s2, s3) in G2 x G3 with g(s3) = (-1)^(a(s2) + b(s2)), as matrices mod 6.

    The characters a, b of G2 and g of G3 cut out the three quadratic
    subfields of one V4-extension, so g is the product of a and b.
    """
    elems = []
    for s2 in g2_group().elements:
        a, b = s2[1], s2[5]
        for s3 in g3_group().elements:
            g = 1 if s3[4] == 1 else -1
            if g == (-1) ** (a + b):
                elems.append(crt_mat({2: s2, 3: s3}, 6))
    G = enumerate_group(elems, 6)
    assert G.order == len(elems) == 144
    return G


def affine_group(ell: int) -> MatGroup:
    """{(A b; 0 1): A in GL_2(F_l), b in F_l^2}; the generic image at l."""
    elems = []
    for a, b, c, d in product(range(ell), repeat=4):
        if (a * d - b * c) % ell:
            for u, v in product(range(ell), repeat=2):
                elems.append(mat([[a, b, u], [c, d, v], [0, 0, 1]], ell))
    return MatGroup(ell, 3, (), frozenset(elems))


def aff1_group(ell: int) -> MatGroup:
    """{[a b; 0 1]} over F_l, the generic image in the multiplicative case."""
    elems = [mat([[a, b], [0, 1]], ell) for a in range(1, ell) for b in range(ell)]
    return MatGroup(ell, 2, (), frozenset(elems))


# -- generic factors --------------------------------------------------------


@lru_cache(maxsize=None)
def _generic_count(ell: int) -> tuple[int, int]:
    """(s_l, |G_l|) for the full affine group, by enumeration over A and b."""
    order = 0
    bad = 0
    bs = np.array(list(product(range(ell), repeat=2)), dtype=np.int64)
    for a, b, c, d in product(range(ell), repeat=4):
        if (a * d - b * c) % ell == 0:
            continue
        order += ell * ell
        # sigma - 1 = [A - 1 | u; 0 0 0]: rank <= 1 iff all 2x2 minors of [A - 1 | u] vanish
        m00, m01, m10, m11 = (a - 1) % ell, b, c, (d - 1) % ell
        if (m00 * m11 - m01 * m10) % ell:
            continue
        u, v = bs[:, 0], bs[:, 1]
        ok = ((m00 * v - m10 * u) % ell == 0) & ((m01 * v - m11 * u) % ell == 0)
        bad += int(ok.sum())
    return bad, order


def generic_bad_ratio(ell: int) -> Fraction:
    """s_l / |G_l| for the full affine group: (l^3 - l - 1) / (l^2 (l - 1)(l^2 - 1))."""
    if ell <= 13:
        s, g = _generic_count(ell)
        return Fraction(s, g)
    return Fraction(ell**3 - ell - 1, ell * ell * (ell - 1) * (ell * ell - 1))


def generic_factor(ell: int) -> Fraction:
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    return 1 - generic_bad_ratio(ell)


def multiplicative_factor(ell: int) -> Fraction:
    return 1 - Fraction(1, ell * (ell - 1))


# -- Artin's constant --------------------------------------------------------

ARTIN = 0.3739558136192022880547280543464164151116


@dataclass(frozen=True)
class ArtinValue:
    cutoff: int
    value: float
    lower: float
    exact: Fraction | None

    def __str__(self):
        return f"{self.value:.6f}"


def artin_constant(cutoff: int = 10**4, exact: bool = False) -> ArtinValue:
    """Product of 1 - 1/(l(l-1)) over primes l <= cutoff.

    The full product lies in [value * (1 - 1/cutoff), value], since the
    missing factors multiply to at least 1 - sum_{n > cutoff} 1/(n(n-1)).
    """
    ps = primes_up_to(cutoff)
    logs = math.fsum(math.log1p(-1.0 / (q * (q - 1))) for q in ps)
    value = math.exp(logs)
    ex = None
    if exact:
        ex = Fraction(1)
        for q in ps:
            ex *= multiplicative_factor(q)
    return ArtinValue(cutoff, value, value * (1 - 1 / cutoff), ex)


def artin_partial_products(cutoff: int) -> list[tuple[int, Fraction]]:
    out = []
    acc = Fraction(1)
    for q in primes_up_to(cutoff):
        acc *= multiplicative_factor(q)
        out.append((q, acc))
    return out


def _squarefree_part(n: int) -> int:
    sign = -1 if n < 0 else 1
    out = 1
    for q, e in factor(abs(n)).items():
        if e % 2:
            out *= q
    return sign * out


def multiplicative_density_preset(x: int) -> float:
    """Standard density for x not a perfect power: Artin's constant, corrected
    when the squarefree part h of x is 1 mod 4 (entanglement of Q(sqrt h)
    with a cyclotomic field).
    """
    if x in (0, 1, -1):
        raise ValueError("x must not be 0 or +-1")
    for k in range(2, max(2, abs(x).bit_length()) + 1):
        r = round(abs(x) ** (1 / k))
        for c in (r - 1, r, r + 1):
            if c > 1 and c**k == abs(x) and (x > 0 or k % 2):
                raise ValueError("perfect powers are not covered by the preset")
    h = _squarefree_part(x)
    if h % 4 != 1:
        return ARTIN
    corr = Fraction(1)
    for q in factor(abs(h)):
        corr *= Fraction(1, q * q - q - 1)
    return ARTIN * float(1 - mobius(abs(h)) * corr)


# -- truncated densities ----------------------------------------------------


@dataclass
class DensityReport:
    N: int
    level_factor: Fraction
    moebius_sum: Fraction
    generic: dict
    value: float
    vanishing: bool
    certificate: dict | None = None

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "level_factor": f"{self.level_factor.numerator}/{self.level_factor.denominator}",
            "generic": {str(k): f"{v.numerator}/{v.denominator}" for k, v in self.generic.items()},
            "value": f"{self.value:.6f}",
            "vanishing": self.vanishing,
            "certificate": self.certificate,
        }


def level_factor(G: MatGroup, r: int = 1) -> tuple[Fraction, Fraction, dict | None]:
    """(1 - s_N/|G_N|, Moebius sum over d | N, certificate if S_N = G_N)."""
    _, s = bad_set_composite(G, r)
    direct = Fraction(G.order - s, G.order)
    total = Fraction(0)
    for d in divisors(G.m):
        Gd = G.project(d)
        t = Gd.order if d == 1 else _bad_everywhere(Gd, r)
        total += mobius(d) * Fraction(t, Gd.order)
    cert = None
    if s == G.order:
        cert = {"level": G.m, "order": G.order, "bad": s}
    return direct, total, cert


def truncated_density(G: MatGroup | None, cutoff: int = 1000, r: int = 1, factor_fn=None) -> DensityReport:
    """Level-N factor of G (N = level of G) times generic factors for l not dividing N."""
    if factor_fn is None:
        factor_fn = generic_factor if r == 1 else multiplicative_factor
    N = G.m if G is not None else 1
    if G is not None:
        for q in factor(N):
            if G.project(q).order * (G.order // G.project(q).order) != G.order:
                raise InconsistentGroups("projection does not divide the group order")
        direct, msum, cert = level_factor(G, r)
        if direct != msum:
            raise InconsistentGroups(f"level factor {direct} disagrees with the Moebius sum {msum}")
    else:
        direct = msum = Fraction(1)
        cert = None
    generic = {q: factor_fn(q) for q in primes_up_to(cutoff) if N % q}
    value = float(direct) * math.exp(math.fsum(math.log(float(f)) for f in generic.values()))
    return DensityReport(N, direct, msum, generic, value, direct == 0, cert)


# -- Lemma on fixed spaces --------------------------------------------------


def fixed_dim(G: MatGroup, ell: int) -> int:
    """dim of the subspace fixed by all of G."""
    n = G.n
    rows = [r for M in G.elements for r in minus_identity(M, n, ell)]
    return n - rank_mod(rows, ell) if rows else n


def coinvariant_dim(G: MatGroup, ell: int) -> int:
    """dim V/span{(sigma - 1)v}."""
    n = G.n
    cols = []
    for M in G.elements:
        D = minus_identity(M, n, ell)
        cols.extend([[D[i][j] for i in range(n)] for j in range(n)])
    return n - rank_mod(cols, ell) if cols else n


def lemma41_check(G: MatGroup) -> dict:
    """hyp1: every element fixes a hyperplane; concl2: G fixes a hyperplane or
    acts trivially on a quotient of codimension n - 1."""
    ell, n = G.m, G.n
    if not is_prime(ell):
        raise ValueError("need a group over a prime field")
    hyp1 = all(is_bad(M, n, ell, 1) for M in G.elements) if n == 3 else all(
        rank_mod(minus_identity(M, n, ell), ell) <= 1 for M in G.elements
    )
    vg, v_g = fixed_dim(G, ell), coinvariant_dim(G, ell)
    concl2 = vg >= n - 1 or v_g >= n - 1
    return {"hyp1": hyp1, "concl2": concl2, "fixed_dim": vg, "coinvariant_dim": v_g, "order": G.order}


def _random_matrix(rng, n, ell, rank_one: bool):
    while True:
        if rank_one:
            u = [rng.randrange(ell) for _ in range(n)]
            v = [rng.randrange(ell) for _ in range(n)]
            M = tuple(((i == j) + u[i] * v[j]) % ell for i in range(n) for j in range(n))
        else:
            M = tuple(rng.randrange(ell) for _ in range(n * n))
        if is_invertible(M, n, ell):
            return M


def random_hyp1_groups(ell: int, count: int, seed: int = 0, n: int = 3, max_tries: int = 200000):
    """Random subgroups of GL_n(F_l) satisfying hyp1, and how many were tried.

    Generators are mostly of the form 1 + u v^T (each fixes a hyperplane) so
    that a fair share of the generated groups satisfies the hypothesis.
    """
    rng = random.Random(seed)
    found, tries = [], 0
    while len(found) < count and tries < max_tries:
        tries += 1
        k = rng.randint(1, 3)
        gens = [_random_matrix(rng, n, ell, rng.random() < 0.9) for _ in range(k)]

        def breaks_hyp1(M):
            return rank_mod(minus_identity(M, n, ell), ell) > 1

        if any(breaks_hyp1(g) for g in gens):
            continue
        G = enumerate_group(gens, ell, n, stop=breaks_hyp1)
        if G is not None:
            found.append(G)
    return found, tries


def lemma41_suite(ells=(2, 3, 5), count: int = 500, seed: int = 0) -> dict:
    out = {}
    for ell in ells:
        groups, tries = random_hyp1_groups(ell, count, seed + ell)
        violations = [G for G in groups if not lemma41_check(G)["concl2"]]
        out[ell] = {"groups": len(groups), "tries": tries, "violations": len(violations)}
    return out
