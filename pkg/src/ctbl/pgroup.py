"""Irreducible characters of p-groups from (C, K) pairs.

Every irreducible character of a p-group is induced from a linear character
of some subgroup C; its kernel K is normal in C with C/K cyclic. The pairs
are produced by a Clifford-theory recursion: for H with a normal subgroup Z
carrying an H-invariant linear character mu, pick A/Z of order p central in
H/Z. Either every extension of mu to A is H-invariant (recurse over all p of
them), or H permutes the extensions transitively and the characters over mu
are induced from the inertia subgroup, which has index p.

Characters are then produced pair by pair, optionally in several worker
processes, with value shortcuts for classes related through a normal
subgroup N <= K on which the generator of C/K is central modulo N.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from .classes import TableHeader, conjugacy_classes
from .classfunction import ClassFunction, canonical_sort
from .cyclotomic import ZERO, Cyclotomic
from .perm import PermGroup, Permutation, prime_factors

Elements = frozenset  # a subgroup of P, as the set of its elements


def _comm(a: Permutation, b: Permutation) -> Permutation:
    return a.inverse() * b.inverse() * a * b


def _closure(gens: Iterable[Permutation], identity: Permutation) -> Elements:
    elems = {identity}
    frontier = [identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def _generators(H: Elements, identity: Permutation) -> list[Permutation]:
    """A small generating set, chosen greedily in sorted order."""
    gens: list[Permutation] = []
    span = frozenset([identity])
    for x in sorted(H):
        if x not in span:
            gens.append(x)
            span = _closure(gens, identity)
            if len(span) == len(H):
                break
    return gens


def _extend(lam: dict, D: Elements, h: Permutation, e: int) -> tuple[Elements, list[dict]]:
    """All extensions of lam from D to <D, h>, where <D, h>/ker(lam) is abelian."""
    k = 1
    y = h
    while y not in D:
        y = y * h
        k += 1
    v = lam[y]
    if v % k:
        raise AssertionError("linear character does not extend")
    step = e // k
    elems = []
    for j in range(k):
        hj = h**j
        for d in D:
            elems.append((d * hj, lam[d], j))
    newD = frozenset(x for x, _, _ in elems)
    out = []
    x0 = v // k
    for t in range(k):
        x = (x0 + t * step) % e
        out.append({g: (ld + j * x) % e for g, ld, j in elems})
    return newD, out


@dataclass
class ConlonPair:
    """K normal in C <= P with C/K cyclic of order ``cyclic_index``, generated by gK.

    ``N`` (possibly None) is a normal subgroup of P inside K with gN central
    in P/N; it enables the value shortcuts.
    """

    C: PermGroup
    K: PermGroup
    g: Permutation
    N: PermGroup | None
    cyclic_index: int
    C_elements: Elements = field(repr=False, default=frozenset())
    K_elements: Elements = field(repr=False, default=frozenset())
    N_elements: Elements | None = field(repr=False, default=None)

    def to_json(self) -> dict:
        def gens(H):
            return [list(x.images) for x in H.generators] if H is not None else None

        return {
            "C": gens(self.C),
            "K": gens(self.K),
            "g": list(self.g.images),
            "N": gens(self.N),
            "cyclic_index": self.cyclic_index,
        }


class PGroupData:
    """Element-level data for a p-group, shared by pair construction and evaluation."""

    def __init__(self, P: PermGroup, header: TableHeader | None = None):
        order = P.order()
        primes = prime_factors(order)
        if len(primes) > 1:
            raise ValueError(f"group of order {order} is not a p-group")
        self.P = P
        self.p = primes[0] if primes else 1
        self.identity = P.identity()
        self.elements: Elements = frozenset(P.elements())
        self.exponent = max((x.order() for x in self.elements), default=1)
        self.header = header if header is not None else conjugacy_classes(P)
        self.gens = list(P.generators)

    @cached_property
    def chief_series(self) -> list[Elements]:
        """1 = N_0 < N_1 < ... < N_r = P, each normal in P with prime index steps."""
        series = [frozenset([self.identity])]
        current = series[0]
        ordered = sorted(self.elements)
        while len(current) < len(self.elements):
            for x in ordered:
                if x in current:
                    continue
                if all(_comm(x, s) in current for s in self.gens) and x**self.p in current:
                    current = _closure(_generators(current, self.identity) + [x], self.identity)
                    series.append(current)
                    break
        return series

    def class_of(self, x: Permutation) -> int:
        return self.header.class_of(x)


# ---------------------------------------------------------------------------
# phase 1: pairs


def _linear_over(data: PGroupData, H: Elements, Z: Elements, mu: dict) -> list[dict]:
    e = data.exponent
    D, chars = Z, [mu]
    for h in _generators(H, data.identity):
        if h in D:
            continue
        new = []
        newD = D
        for lam in chars:
            newD, exts = _extend(lam, D, h, e)
            new.extend(exts)
        D, chars = newD, new
    return chars


def _irr_over(data: PGroupData, H: Elements, Z: Elements, mu: dict, out: list):
    """Append (C, lambda) for every irreducible of H lying over mu."""
    e = data.exponent
    ker = frozenset(z for z in Z if mu[z] == 0)
    gens = _generators(H, data.identity)
    if all(_comm(a, b) in ker for i, a in enumerate(gens) for b in gens[i + 1:]):
        for lam in _linear_over(data, H, Z, mu):
            out.append((H, lam))
        return
    candidates = []
    for a in sorted(H):
        if a in Z or not all(_comm(a, h) in Z for h in gens):
            continue
        candidates.append(a)
        if any(mu[_comm(a, h)] for h in gens):
            candidates = [a]
            break
    a = candidates[0]
    while a**data.p not in Z:
        a = a**data.p
    A, exts = _extend(mu, Z, a, e)
    if any(mu[_comm(a, h)] for h in gens):
        T = frozenset(h for h in H if mu[_comm(a, h)] == 0)
        _irr_over(data, T, A, exts[0], out)
    else:
        for lam in exts:
            _irr_over(data, H, A, lam, out)


def _subgroup(data: PGroupData, elems: Elements) -> PermGroup:
    return PermGroup(_generators(elems, data.identity), degree=data.P.degree)


def build_pairs(P: PermGroup, data: PGroupData | None = None) -> list[ConlonPair]:
    """The (C, K) pairs whose faithful linear characters induce all of Irr(P)."""
    data = data or PGroupData(P)
    one = frozenset([data.identity])
    found: list = []
    _irr_over(data, data.elements, one, {data.identity: 0}, found)
    pairs: list[ConlonPair] = []
    seen = set()
    e = data.exponent
    for C, lam in found:
        K = frozenset(x for x in C if lam[x] == 0)
        if (C, K) in seen:
            continue
        seen.add((C, K))
        m = len(C) // len(K)
        g = min(x for x in C if math.gcd(lam[x], e) * m == e or (m == 1 and x == data.identity))
        N = None
        for Ni in reversed(data.chief_series):
            if Ni <= K and all(_comm(g, s) in Ni for s in data.gens):
                N = Ni
                break
        pairs.append(
            ConlonPair(
                C=_subgroup(data, C),
                K=_subgroup(data, K),
                g=g,
                N=_subgroup(data, N) if N is not None else None,
                cyclic_index=m,
                C_elements=C,
                K_elements=K,
                N_elements=N,
            )
        )
    pairs.sort(key=lambda pr: (-len(pr.C_elements), len(pr.K_elements), pr.g.images))
    return pairs


# ---------------------------------------------------------------------------
# phase 2: characters of one pair


@dataclass
class ShortcutPlan:
    """Class blocks forced equal by N, the g-translation on blocks, vanishing blocks."""

    block: list[int]
    translate: dict[int, int]
    zero_blocks: frozenset
    g_class: int


def shortcut_plan(pair: ConlonPair, data: PGroupData) -> ShortcutPlan | None:
    if pair.N_elements is None:
        return None
    header = data.header
    n = len(header)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    reps = header.representatives
    for c, x in enumerate(reps):
        for y in pair.N_elements:
            a, b = find(c), find(data.class_of(x * y))
            if a != b:
                parent[max(a, b)] = min(a, b)
    block = [find(c) for c in range(n)]
    translate = {}
    zero = set()
    for c, x in enumerate(reps):
        b2 = block[data.class_of(x * pair.g)]
        translate[block[c]] = b2
        if b2 == block[c] and pair.cyclic_index > 1:
            zero.add(block[c])
    return ShortcutPlan(block, translate, frozenset(zero), data.class_of(pair.g))


def thummel_shortcut(
    pair: ConlonPair,
    x_class: int,
    known: dict[int, Cyclotomic],
    header_of_P: TableHeader,
    plan: ShortcutPlan | None = None,
    P: PermGroup | None = None,
) -> Cyclotomic | None:
    """Value at ``x_class`` derived from already-known values, if any rule applies.

    Rules, for chi induced from a character of C with kernel exactly K:
    chi is constant on cosets xN; chi(xg) = omega chi(x) with omega a
    |C/K|-th root of unity (-1 when |C/K| = 2, else chi(g)/chi(1)); and
    chi(x) = 0 when xg lies in the N-block of x.
    """
    if plan is None:
        if pair.N_elements is None or P is None:
            return None
        plan = shortcut_plan(pair, PGroupData(P, header_of_P))
    b = plan.block[x_class]
    for c, v in known.items():
        if plan.block[c] == b:
            return v
    if b in plan.zero_blocks:
        return ZERO
    if pair.cyclic_index == 2:
        omega = Cyclotomic.from_rational(-1)
    elif plan.g_class in known and 0 in known and not known[0].is_zero():
        omega = known[plan.g_class] / known[0]
    else:
        return None
    target = plan.translate.get(b)
    for c, v in known.items():
        bc = plan.block[c]
        if plan.translate.get(bc) == b:
            return omega * v
        if bc == target:
            return v * omega.inverse()
    return None


def _right_transversal(data: PGroupData, C: Elements) -> list[Permutation]:
    seen: set = set()
    reps = []
    for h in sorted(data.elements):
        if h in seen:
            continue
        reps.append(h)
        for c in C:
            seen.add(c * h)
    return reps


def _faithful_characters(pair: ConlonPair, data: PGroupData) -> list[dict]:
    """All linear characters of C with kernel exactly K, as exponent maps mod |C/K|."""
    m = pair.cyclic_index
    index = {}
    gj = data.identity
    for j in range(m):
        for k in pair.K_elements:
            index[gj * k] = j
        gj = gj * pair.g
    return [{x: (a * j) % m for x, j in index.items()} for a in range(m) if math.gcd(a, m) == 1]


def _induced_value(lam: dict, m: int, x: Permutation, transversal) -> Cyclotomic:
    counts: dict[int, int] = {}
    for h in transversal:
        y = x ** h.inverse()
        v = lam.get(y)
        if v is not None:
            counts[v] = counts.get(v, 0) + 1
    if not counts:
        return ZERO
    return Cyclotomic.from_sum(m, counts)


def characters_from_pair(
    pair: ConlonPair,
    P: PermGroup,
    header_of_P: TableHeader | None = None,
    use_shortcuts: bool = True,
    data: PGroupData | None = None,
    stats: dict | None = None,
) -> list[ClassFunction]:
    """Characters of P induced from the faithful linear characters of C/K."""
    data = data or PGroupData(P, header_of_P)
    header = data.header
    plan = shortcut_plan(pair, data) if use_shortcuts else None
    transversal = _right_transversal(data, pair.C_elements)
    reps = header.representatives
    n = len(header)
    out = []
    for lam in _faithful_characters(pair, data):
        known: dict[int, Cyclotomic] = {}
        order = [0]
        if plan is not None and plan.g_class not in order:
            order.append(plan.g_class)
        order += [c for c in range(n) if c not in order]
        for c in order:
            v = None
            if plan is not None and c != 0:
                v = thummel_shortcut(pair, c, known, header, plan)
                if v is not None and stats is not None:
                    stats["shortcut"] = stats.get("shortcut", 0) + 1
            if v is None:
                v = _induced_value(lam, pair.cyclic_index, reps[c], transversal)
                if stats is not None:
                    stats["direct"] = stats.get("direct", 0) + 1
            known[c] = v
        chi = ClassFunction([known[c] for c in range(n)])
        out.append(chi)
    return canonical_sort(out)


# ---------------------------------------------------------------------------
# drivers


def _worker(args):
    gens, degree, header, pair_list, use_shortcuts, segment = args
    P = PermGroup([Permutation(g) for g in gens], degree=degree)
    data = PGroupData(P, header)
    chars = []
    for pair in pair_list:
        chars.extend(characters_from_pair(pair, P, header, use_shortcuts, data))
    chars = canonical_sort(chars)
    if segment is not None:
        from .charstore import write_store

        write_store(segment, header, chars)
    return [c.to_strings() for c in chars]


def assign_pairs(n_pairs: int, jobs: int) -> list[list[int]]:
    """Round-robin assignment of pair indices to workers."""
    jobs = max(1, jobs)
    return [list(range(w, n_pairs, jobs)) for w in range(jobs)]


def write_assignment(path: str | Path, assignment: Sequence[Sequence[int]]) -> None:
    Path(path).write_text(json.dumps([list(a) for a in assignment]) + "\n", encoding="utf-8")


def read_assignment(path: str | Path) -> list[list[int]]:
    return [list(map(int, a)) for a in json.loads(Path(path).read_text(encoding="utf-8"))]


def irreducible_characters(
    P: PermGroup,
    header: TableHeader | None = None,
    jobs: int = 1,
    use_shortcuts: bool = True,
    store_dir: str | Path | None = None,
    assignment: Sequence[Sequence[int]] | None = None,
) -> list[ClassFunction]:
    """All irreducible characters of the p-group P, canonically sorted."""
    if P.order() == 1:
        return [ClassFunction([1])]
    data = PGroupData(P, header)
    header = data.header
    pairs = build_pairs(P, data)
    if assignment is None:
        assignment = assign_pairs(len(pairs), jobs)
    segments = []
    if store_dir is not None:
        Path(store_dir).mkdir(parents=True, exist_ok=True)
        segments = [Path(store_dir) / f"segment-{w}.ctbl" for w in range(len(assignment))]
    tasks = [
        (
            [list(g.images) for g in P.generators],
            P.degree,
            header,
            [pairs[i] for i in idx],
            use_shortcuts,
            segments[w] if segments else None,
        )
        for w, idx in enumerate(assignment)
    ]
    if len(tasks) == 1:
        results = [_worker(tasks[0])]
    else:
        with ProcessPoolExecutor(max_workers=len(tasks)) as pool:
            results = list(pool.map(_worker, tasks))
    chars = [ClassFunction.from_strings(s) for res in results for s in res]
    if segments:
        from .charstore import merge

        merge(segments, Path(store_dir) / "merged.ctbl")
    return canonical_sort(chars)
