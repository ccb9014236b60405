"""Induced characters from elementary subgroups P x <x>.

For every class representative x of G the cyclic group <x> is used, and so
is P x <x> for each non-cyclic Sylow p-subgroup P of C_G(x) with p coprime
to |x|. By Brauer's induction theorem the characters induced from these
subgroups span the character ring, so LLL reduction finds all irreducibles.

Induction uses the class-level formula

    chi(g) = |C_G(g)|/n * sum_i u^i * sum_{y in C, (xy)^M(i) ~ g} chi(y)/|C_P(y)|

where C is a set of class representatives of P and M(i) = i mod n,
M(i) = 1 mod exp(P). The class of (xy)^M(i) is precomputed per subgroup, so
evaluating a character needs no group arithmetic.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .classes import TableHeader, conjugacy_classes
from .classfunction import ClassFunction, canonical_sort
from .cyclotomic import Cyclotomic
from .perm import PermGroup, Permutation, centralizer, prime_factors, sylow_subgroup


def crt_exponent(n: int, e: int) -> list[int]:
    """M(0..n-1) with M(i) = i mod n, M(i) = 1 mod e and 0 <= M(i) < n*e."""
    if n < 1 or e < 1:
        raise ValueError("n and e must be positive")
    if math.gcd(n, e) != 1:
        raise ValueError(f"gcd({n}, {e}) != 1")
    ne = n * e
    # i*e*(e^-1 mod n) + n*(n^-1 mod e)
    a = e * pow(e, -1, n) if n > 1 else 0
    b = n * pow(n, -1, e) if e > 1 else 0
    return [(i * a + b) % ne for i in range(n)]


@dataclass
class PClass:
    """A class representative y of P, |C_P(y)|, and the G-class of (xy)^M(i) per i."""

    y: Permutation
    centralizer_order: int
    fused: tuple[int, ...]


@dataclass
class BrauerSubgroup:
    x: Permutation
    n: int
    P: PermGroup
    e: int
    m_table: list[int]
    p_class_data: list[PClass]
    p_header: TableHeader = field(repr=False)
    x_class: int = 0
    p_irr: list[ClassFunction] | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return self.n * self.P.order()

    def p_characters(self) -> list[ClassFunction]:
        if self.p_irr is None:
            from .pgroup import irreducible_characters

            self.p_irr = irreducible_characters(self.P, self.p_header)
        return self.p_irr


def _is_cyclic(H: PermGroup) -> bool:
    return H.exponent() == H.order()


def make_brauer_subgroup(
    G: PermGroup, header: TableHeader, x: Permutation, P: PermGroup
) -> BrauerSubgroup:
    n = x.order()
    p_header = conjugacy_classes(P)
    e = p_header.exponent
    M = crt_exponent(n, e)
    data = []
    for cc in p_header.classes:
        xy = x * cc.representative
        fused = tuple(header.class_of(xy**m) for m in M)
        data.append(PClass(cc.representative, cc.centralizer_order, fused))
    return BrauerSubgroup(x, n, P, e, M, data, p_header, header.class_of(x))


def build_brauer_subgroups(G: PermGroup, header: TableHeader, seed: int = 0) -> list[BrauerSubgroup]:
    """One cyclic entry per class, plus P x <x> for each non-cyclic coprime Sylow of C_G(x)."""
    out = []
    trivial = PermGroup([], degree=G.degree)
    for cc in header.classes:
        x = cc.representative
        out.append(make_brauer_subgroup(G, header, x, trivial))
        n = cc.rep_order
        primes = [p for p in prime_factors(cc.centralizer_order) if n % p]
        if not primes:
            continue
        C = centralizer(G, x)
        for p in primes:
            S = sylow_subgroup(C, p, seed=seed)
            if not _is_cyclic(S):
                out.append(make_brauer_subgroup(G, header, x, S))
    return out


def induce_from_product(
    B: BrauerSubgroup, chi: ClassFunction, u_exponent: int, header: TableHeader
) -> ClassFunction:
    """The character of G induced from chi (on P) times u -> E(n)^u_exponent (on <x>)."""
    if len(chi) != len(B.p_class_data):
        raise ValueError("chi is not a class function of P")
    n = B.n
    conductors = [n] + [v.conductor for v in chi]
    N = 1
    for c in conductors:
        N = N * c // math.gcd(N, c)
    step = N // n
    weights = [
        {k: Fraction(v) / pc.centralizer_order for k, v in val.embed(N).items()}
        for val, pc in zip(chi, B.p_class_data)
    ]
    k_classes = len(header)
    acc: list[dict[int, Fraction]] = [{} for _ in range(k_classes)]
    for i in range(n):
        shift = (u_exponent * i * step) % N
        for pc, w in zip(B.p_class_data, weights):
            target = acc[pc.fused[i]]
            for k, v in w.items():
                kk = (k + shift) % N
                target[kk] = target.get(kk, 0) + v
    values = []
    for c, a in enumerate(acc):
        scale = Fraction(header.classes[c].centralizer_order, n)
        values.append(Cyclotomic.from_sum(N, {k: v * scale for k, v in a.items()}))
    return ClassFunction(values)


def induce_naive(
    G: PermGroup, header: TableHeader, B: BrauerSubgroup, chi: ClassFunction, u_exponent: int
) -> ClassFunction:
    """Induction by the defining sum over all h in G (test oracle)."""
    n = B.n
    K = {}
    xi = B.x**0
    p_elems = list(B.P.elements())
    for i in range(n):
        for y in p_elems:
            K[xi * y] = (i, B.p_header.class_of(y))
        xi = xi * B.x
    elements = list(G.elements())
    values = []
    for cc in header.classes:
        g = cc.representative
        total = Cyclotomic.from_rational(0)
        for h in elements:
            k = g**h
            hit = K.get(k)
            if hit is not None:
                i, yc = hit
                total = total + Cyclotomic.from_sum(n, {u_exponent * i: 1}) * chi[yc]
        values.append(total * Fraction(1, len(K)))
    return ClassFunction(values)


def characters_of_subgroup(B: BrauerSubgroup, header: TableHeader) -> list[ClassFunction]:
    """All characters induced from irreducibles of P x <x>."""
    out = []
    for chi in B.p_characters():
        for j in range(B.n):
            out.append(induce_from_product(B, chi, j, header))
    return out


def _worker(args):
    subgroups, header = args
    out = []
    for B in subgroups:
        out.extend(c.to_strings() for c in characters_of_subgroup(B, header))
    return out


def induced_characters(
    header: TableHeader, subgroups: Sequence[BrauerSubgroup], jobs: int = 1
) -> list[ClassFunction]:
    """Deduplicated, canonically sorted induced characters from every subgroup."""
    if jobs <= 1 or len(subgroups) <= 1:
        chars = [c for B in subgroups for c in characters_of_subgroup(B, header)]
        return canonical_sort(chars)
    chunks = [list(subgroups[w::jobs]) for w in range(jobs)]
    chunks = [c for c in chunks if c]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        results = pool.map(_worker, [(c, header) for c in chunks])
        chars = [ClassFunction.from_strings(s) for res in results for s in res]
    return canonical_sort(chars)
