"""Hybrid groups: a permutation group on top of a polycyclic solvable radical.

``G`` is represented through its solvable radical ``R`` (a PC presentation)
and the faithful permutation group ``Q = G/R``. Every element is written
uniquely as ``sigma(q) * r`` where ``sigma`` picks, for each ``q`` in ``Q``,
the product of quotient generators along a fixed breadth-first spanning tree
of the Cayley graph. Multiplication needs

* the action of each quotient generator on ``R`` (images of the pc generators),
* the cocycle ``c(q, i)`` in ``R`` with ``sigma(q) x_i = sigma(q x_i) c(q, i)``.

The cocycle is not stored: it is recovered from the quotient relators and
their tails (the values in ``R`` the relators take in ``G``) by tracing every
relator from every coset and solving for single unknown edges.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Sequence

from ..perm import (
    PermGroup,
    Permutation,
    derived_subgroup,
    is_solvable,
    normal_closure,
)
from .pc import PcPresentation, Vector
from .todd_coxeter import enumerate_cosets
from .words import Word, compress, format_word, letters, parse_word, vector_word


class HybridError(ValueError):
    pass


@dataclass(frozen=True)
class HybridElement:
    quotient: Permutation
    radical: Vector

    def __repr__(self) -> str:
        return f"HybridElement({self.quotient!r}, {format_word(vector_word(self.radical))})"


@dataclass
class HybridGroup:
    """Immutable after construction; build with :func:`build_from_perm_group` or :func:`import_presentation`."""

    radical: PcPresentation
    quotient_generators: list[Permutation]
    quotient_degree: int
    quotient_relators: list[Word]
    tails: list[Vector]
    action: list[list[Vector]]
    # optional link back to a source permutation group
    source_lifts: list[Permutation] | None = field(default=None, repr=False)
    source_pcgs: list[Permutation] | None = field(default=None, repr=False)
    source_sift: Callable | None = field(default=None, repr=False)
    source_project: Callable | None = field(default=None, repr=False)

    def __post_init__(self):
        self._setup_quotient()
        self._inverse_action = [self._invert_automorphism(a) for a in self.action]
        self._solve_cocycle()

    # -- quotient bookkeeping --------------------------------------------

    def _setup_quotient(self):
        ident = Permutation.identity(self.quotient_degree)
        self.quotient_identity = ident
        elems = [ident]
        index = {ident: 0}
        parent: list[tuple[int, int] | None] = [None]
        nxt: list[list[int]] = []
        queue = deque([0])
        s = len(self.quotient_generators)
        rows: dict[int, list[int]] = {}
        while queue:
            a = queue.popleft()
            row = []
            for i, x in enumerate(self.quotient_generators):
                b = elems[a] * x
                j = index.get(b)
                if j is None:
                    j = len(elems)
                    index[b] = j
                    elems.append(b)
                    parent.append((a, i))
                    queue.append(j)
                row.append(j)
            rows[a] = row
        nxt = [rows[a] for a in range(len(elems))] if s else [[] for _ in elems]
        self.quotient_elements = elems
        self.quotient_index = index
        self.quotient_next = nxt
        self.tree_parent = parent
        words: list[list[int]] = [[]]
        for k in range(1, len(elems)):
            a, i = parent[k]
            words.append(words[a] + [i])
        self.tree_words = words
        prev = [[0] * s for _ in elems]
        for a in range(len(elems)):
            for i in range(s):
                prev[nxt[a][i]][i] = a
        self.quotient_prev = prev

    @property
    def quotient_order(self) -> int:
        return len(self.quotient_elements)

    @property
    def order(self) -> int:
        return self.quotient_order * self.radical.order

    # -- radical automorphisms -------------------------------------------

    def _apply(self, images: Sequence[Vector], v: Vector) -> Vector:
        pc = self.radical
        r = pc.identity
        for j, e in enumerate(v):
            for _ in range(e):
                r = pc.mul(r, images[j])
        return r

    def _invert_automorphism(self, images: list[Vector]) -> list[Vector]:
        pc = self.radical
        m = len(pc)
        gens = [pc.unit(j) for j in range(m)]
        current = list(images)
        prev = gens
        while current != gens:
            prev = current
            current = [self._apply(images, v) for v in current]
        return prev

    def act(self, v: Vector, i: int, sign: int = 1) -> Vector:
        """v^(x_i) or v^(x_i^-1)."""
        return self._apply(self.action[i] if sign > 0 else self._inverse_action[i], v)

    def act_word(self, v: Vector, word: Sequence[int]) -> Vector:
        for i in word:
            v = self.act(v, i)
        return v

    # -- cocycle -----------------------------------------------------------

    def _edge_value(self, c, q: int, i: int, sign: int):
        """Value on the edge leaving coset q by x_i^sign, or None if unknown."""
        pc = self.radical
        if sign > 0:
            return c[q][i]
        q2 = self.quotient_prev[q][i]
        v = c[q2][i]
        if v is None:
            return None
        return self.act(pc.inv(v), i, -1)

    def _trace(self, c, q: int, lets):
        out = []
        for i, s in lets:
            out.append((q, i, s, self._edge_value(c, q, i, s)))
            q = self.quotient_next[q][i] if s > 0 else self.quotient_prev[q][i]
        return out, q

    def _solve_cocycle(self, extra: Callable | None = None) -> None:
        pc = self.radical
        n = self.quotient_order
        s = len(self.quotient_generators)
        c: list[list[Vector | None]] = [[None] * s for _ in range(n)]
        for k in range(1, n):
            a, i = self.tree_parent[k]
            c[a][i] = pc.identity
        unknown = sum(v is None for row in c for v in row)
        def relator_letters():
            return [(letters(w), t) for w, t in zip(self.quotient_relators, self.tails)]

        rels = relator_letters()
        while unknown:
            progress = False
            for lets, t in rels:
                for q in range(n):
                    steps, end = self._trace(c, q, lets)
                    missing = [k for k, st in enumerate(steps) if st[3] is None]
                    if len(missing) != 1:
                        continue
                    j = missing[0]
                    a = pc.identity
                    for k in range(j):
                        _, i, sg, val = steps[k]
                        a = pc.mul(val, self.act(a, i, sg))
                    b = t
                    for k in range(len(steps) - 1, j, -1):
                        _, i, sg, val = steps[k]
                        b = self.act(pc.mul(pc.inv(val), b), i, -sg)
                    q0, i, sg, _ = steps[j]
                    val = pc.mul(b, pc.inv(self.act(a, i, sg)))
                    if sg > 0:
                        c[q0][i] = val
                    else:
                        q2 = self.quotient_prev[q0][i]
                        c[q2][i] = pc.inv(self.act(val, i, 1))
                    unknown -= 1
                    progress = True
            if unknown and not progress:
                if extra is None or not extra(c):
                    raise HybridError("quotient relators do not determine the extension")
                unknown = sum(v is None for row in c for v in row)
                rels = relator_letters()
        self.cocycle = c
        for lets, t in rels:
            for q in range(n):
                steps, _ = self._trace(c, q, lets)
                a = pc.identity
                for _, i, sg, val in steps:
                    a = pc.mul(val, self.act(a, i, sg))
                if a != t:
                    raise HybridError("relator tails are inconsistent with the action")

    # -- elements ------------------------------------------------------------

    def identity(self) -> HybridElement:
        return HybridElement(self.quotient_identity, self.radical.identity)

    def _trace_word(self, q: int, word: Sequence[int]) -> tuple[int, Vector]:
        """sigma(q) * x_word = sigma(q') * a; returns (q', a)."""
        pc = self.radical
        a = pc.identity
        for i in word:
            a = pc.mul(self.cocycle[q][i], self.act(a, i))
            q = self.quotient_next[q][i]
        return q, a

    def multiply(self, a: HybridElement, b: HybridElement) -> HybridElement:
        pc = self.radical
        qa = self.quotient_index[a.quotient]
        qb = self.quotient_index[b.quotient]
        word = self.tree_words[qb]
        q, cz = self._trace_word(qa, word)
        r1 = self.act_word(a.radical, word)
        return HybridElement(self.quotient_elements[q], pc.mul(pc.mul(cz, r1), b.radical))

    def inverse(self, a: HybridElement) -> HybridElement:
        pc = self.radical
        qa = self.quotient_index[a.quotient]
        qi = self.quotient_index[a.quotient.inverse()]
        _, d = self._trace_word(qa, self.tree_words[qi])
        r = self.act_word(pc.inv(a.radical), self.tree_words[qi])
        return HybridElement(self.quotient_elements[qi], pc.mul(r, pc.inv(d)))

    def generators(self) -> list[HybridElement]:
        """Quotient generators x_i followed by the pc generators."""
        pc = self.radical
        out = []
        for i, x in enumerate(self.quotient_generators):
            out.append(HybridElement(x, self.cocycle[0][i]))
        for j in range(len(pc)):
            out.append(HybridElement(self.quotient_identity, pc.unit(j)))
        return out

    def radical_element(self, v: Vector) -> HybridElement:
        return HybridElement(self.quotient_identity, tuple(v))

    def elements(self):
        for q in self.quotient_elements:
            for r in self.radical.elements():
                yield HybridElement(q, r)

    def random_element(self, rng) -> HybridElement:
        q = rng.choice(self.quotient_elements)
        r = tuple(rng.randrange(p) for p in self.radical.relative_orders)
        return HybridElement(q, r)

    # -- link to the source permutation group ---------------------------------

    def to_permutation(self, a: HybridElement) -> Permutation:
        if self.source_lifts is None:
            raise HybridError("no source permutation group attached")
        g = self.source_pcgs[0] ** 0 if self.source_pcgs else self.source_lifts[0] ** 0
        for i in self.tree_words[self.quotient_index[a.quotient]]:
            g = g * self.source_lifts[i]
        for j, e in enumerate(a.radical):
            for _ in range(e):
                g = g * self.source_pcgs[j]
        return g

    def from_permutation(self, g: Permutation) -> HybridElement:
        if self.source_lifts is None:
            raise HybridError("no source permutation group attached")
        q = self.source_project(g)
        s = g**0
        for i in self.tree_words[self.quotient_index[q]]:
            s = s * self.source_lifts[i]
        return HybridElement(q, self.source_sift(s.inverse() * g))


# ---------------------------------------------------------------------------
# construction from a permutation group


def _is_elementary_abelian(N: PermGroup) -> int | None:
    """The prime p if N is elementary abelian of exponent p (1 for the trivial group)."""
    if N.is_trivial():
        return 1
    if not N.is_abelian():
        return None
    orders = {g.order() for g in N.generators}
    if len(orders) != 1:
        return None
    p = orders.pop()
    if any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
        return None
    return p


def _coset_action(G: PermGroup, gens: Sequence[Permutation], N_elements: Sequence[Permutation]):
    """Images of ``gens`` acting on the right cosets of the normal subgroup N."""
    ident = G.identity()

    def key(x):
        return min(n * x for n in N_elements)

    start = key(ident)
    points = [start]
    index = {start: 0}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = key(x * s)
            if y not in index:
                index[y] = len(points)
                points.append(y)
                queue.append(y)

    def project(g: Permutation) -> Permutation:
        return Permutation([index[key(x * g)] for x in points])

    return project, len(points)


class _Lifter:
    """Preimages in G of quotient elements, via a diagonal group with the quotient points first."""

    def __init__(self, G: PermGroup, project: Callable, qdegree: int):
        n = G.degree
        self.n = n
        self.qdegree = qdegree
        diag = []
        for g in G.generators:
            q = project(g)
            diag.append(Permutation(list(g.images) + [n + i for i in q.images]))
        self.D = PermGroup(diag, degree=n + qdegree, base_prefix=list(range(n, n + qdegree)))

    def lift(self, q: Permutation) -> Permutation:
        n = self.n
        h = Permutation(list(range(n)) + [n + i for i in q.images])
        prod = None
        for lv in self.D._levels:
            if lv.point < n:
                break
            b = h.images[lv.point]
            u = lv.transversal[b]
            h = h * u.inverse()
            prod = u if prod is None else u * prod
        if prod is None:
            return Permutation.identity(n)
        return Permutation(prod.images[:n])


def _radical(Q: PermGroup) -> PermGroup:
    """The solvable radical: generated by normal closures of solvable class representatives."""
    from ..classes import conjugacy_classes

    if Q.is_trivial():
        return Q
    if is_solvable(Q):
        return Q
    header = conjugacy_classes(Q)
    gens = []
    for x in header.representatives[1:]:
        if is_solvable(normal_closure(Q, x)):
            gens.append(x)
    if not gens:
        return PermGroup([], degree=Q.degree)
    return normal_closure(Q, gens)


def _prime_step(H: PermGroup, x: Permutation) -> Permutation:
    """A power of x of prime order modulo H (x not in H)."""
    k = 1
    y = x
    while not H.contains(y):
        y = y * x
        k += 1
    p = min(q for q in range(2, k + 1) if k % q == 0)
    return x ** (k // p)


def _composition_chain(R: PermGroup) -> list[Permutation]:
    """Elements y_1, y_2, ... with <y_1..y_t> growing by a prime index, refining the derived series."""
    series = [R]
    while not series[-1].is_trivial():
        series.append(derived_subgroup(series[-1]))
    H = PermGroup([], degree=R.degree)
    chain: list[Permutation] = []
    for D in reversed(series[:-1]):
        candidates = sorted(D.elements())
        for x in candidates:
            if H.order() == D.order():
                break
            if H.contains(x):
                continue
            y = _prime_step(H, x)
            chain.append(y)
            H = PermGroup(list(H.generators) + [y], degree=R.degree)
    return chain


def _vector_quotient(G: PermGroup, N: PermGroup, p: int, basis: list[Permutation]):
    """Faithful action of G/N on a G-orbit of vectors of N, trying orbits in increasing size."""
    k = len(basis)
    coords: dict[Permutation, tuple[int, ...]] = {}
    ident = G.identity()
    elems = {(0,) * k: ident}
    for j, b in enumerate(basis):
        new = {}
        for v, x in elems.items():
            y = x
            for e in range(p):
                w = list(v)
                w[j] = e
                new[tuple(w)] = y
                y = y * b
        elems = new
    coords = {x: v for v, x in elems.items()}
    matrices = {g: [coords[b**g] for b in basis] for g in G.generators}

    def apply(v, M):
        return tuple(sum(v[i] * M[i][j] for i in range(k)) % p for j in range(k))

    remaining = set(v for v in elems if any(v))
    orbits = []
    while remaining:
        v0 = min(remaining)
        orbit = [v0]
        seen = {v0}
        for v in orbit:
            for M in matrices.values():
                w = apply(v, M)
                if w not in seen:
                    seen.add(w)
                    orbit.append(w)
        remaining -= seen
        orbits.append(sorted(orbit))
    orbits.sort(key=lambda o: (len(o), o[0]))
    target = G.order() // N.order()
    for orbit in orbits:
        index = {v: i for i, v in enumerate(orbit)}

        def project(g, index=index, orbit=orbit):
            M = [coords[b**g] for b in basis]
            return Permutation([index[apply(v, M)] for v in orbit])

        Q = PermGroup([project(g) for g in G.generators], degree=len(orbit))
        if Q.order() == target:
            return project, len(orbit), matrices, coords
    return None, 0, matrices, coords


def _elementary_basis(N: PermGroup) -> list[Permutation]:
    basis: list[Permutation] = []
    span = PermGroup([], degree=N.degree)
    for g in sorted(N.elements()):
        if not span.contains(g):
            basis.append(g)
            span = PermGroup(basis, degree=N.degree)
    return basis


@dataclass
class BuildReport:
    normal_subgroup_order: int
    quotient_action: str  # "identity", "vectors" or "cosets"
    quotient_degree: int
    matrices: dict = field(default_factory=dict)


def build_from_perm_group(G: PermGroup, seed: Permutation, prune: bool = True) -> HybridGroup:
    """Hybrid representation of G from a seed whose normal closure is elementary abelian."""
    if not G.contains(seed):
        raise HybridError("seed is not an element of G")
    N = normal_closure(G, seed)
    p = _is_elementary_abelian(N)
    if p is None:
        raise HybridError("the normal closure of the seed is not elementary abelian")
    basis = _elementary_basis(N) if p > 1 else []
    # G -> G/N as a permutation group
    matrices = {}
    if N.is_trivial():
        project, qdeg, how = (lambda g: g), G.degree, "identity"
    else:
        project, qdeg, matrices, _ = _vector_quotient(G, N, p, basis)
        how = "vectors"
        if project is None:
            project, qdeg = _coset_action(G, G.generators, list(N.elements()))
            how = "cosets"
    Q = PermGroup([project(g) for g in G.generators], degree=qdeg)
    if Q.order() * N.order() != G.order():
        raise HybridError("quotient action is not faithful on G/N; choose another orbit")
    lifter = _Lifter(G, project, qdeg)
    RQ = _radical(Q)
    # G/R as a permutation group
    if RQ.is_trivial():
        project2, qdeg2 = project, qdeg
    elif RQ.order() == Q.order():
        project2, qdeg2 = (lambda g: Permutation.identity(1)), 1
    else:
        inner, qdeg2 = _coset_action(Q, Q.generators, list(RQ.elements()))
        project2 = lambda g: inner(project(g))  # noqa: E731
    # pcgs: refinement of the radical above N, then the basis of N
    chain = _composition_chain(RQ) if not RQ.is_trivial() else []
    pcgs = [lifter.lift(y) for y in reversed(chain)] + basis
    m = len(pcgs)
    layers = [PermGroup(pcgs[j:], degree=G.degree) for j in range(m)]
    layers.append(PermGroup([], degree=G.degree))
    rel_orders = [layers[j].order() // layers[j + 1].order() for j in range(m)]

    def sift(r: Permutation) -> Vector:
        v = []
        for j in range(m):
            gi = pcgs[j].inverse()
            e = 0
            while not layers[j + 1].contains(r):
                r = gi * r
                e += 1
                if e >= rel_orders[j]:
                    raise HybridError("element is not in the radical")
            v.append(e)
        if not r.is_identity():
            raise HybridError("element is not in the radical")
        return tuple(v)

    power = [sift(g ** rel_orders[j]) for j, g in enumerate(pcgs)]
    conj = {(j, k): sift(pcgs[k] ** pcgs[j]) for j in range(m) for k in range(j + 1, m)}
    pc = PcPresentation(rel_orders, power, conj)

    # quotient generators and their lifts
    qgens: list[Permutation] = []
    lifts: list[Permutation] = []
    for g in G.generators:
        x = project2(g)
        if not x.is_identity() and x not in qgens:
            qgens.append(x)
            lifts.append(g)
    action = [[sift(b**l) for b in pcgs] for l in lifts]

    def evaluate(word: Word) -> Permutation:
        r = G.identity()
        for i, e in word:
            r = r * lifts[i] ** e
        return r

    # candidate quotient relators: generator orders, then Schreier relators
    hg = _QuotientTree(qgens, qdeg2)
    target = hg.order
    candidates = [[(i, x.order())] for i, x in enumerate(qgens)]
    schreier = hg.schreier_relators()
    candidates += sorted(schreier, key=lambda w: (sum(abs(e) for _, e in w), format_word(w, "q")))
    relators = _select_relators(len(qgens), candidates, target) if prune else candidates
    tails = [sift(evaluate(w)) for w in relators]

    def add_schreier(c):
        # fall back to the Schreier relator of the first undetermined edge
        for q, row in enumerate(c):
            for i, v in enumerate(row):
                if v is None:
                    w = hg.edge_relator(q, i)
                    H.quotient_relators.append(w)
                    H.tails.append(sift(evaluate(w)))
                    return True
        return False

    H = HybridGroup.__new__(HybridGroup)
    H.radical = pc
    H.quotient_generators = qgens
    H.quotient_degree = qdeg2
    H.quotient_relators = relators
    H.tails = tails
    H.action = action
    H.source_lifts = lifts
    H.source_pcgs = pcgs
    H.source_sift = sift
    H.source_project = project2
    H._setup_quotient()
    H._inverse_action = [H._invert_automorphism(a) for a in action]
    H._solve_cocycle(extra=add_schreier)
    H.report = BuildReport(N.order(), how, qdeg, matrices)
    return H


class _QuotientTree:
    """Breadth-first spanning tree of the Cayley graph of the quotient."""

    def __init__(self, gens: list[Permutation], degree: int):
        ident = Permutation.identity(degree)
        self.elems = [ident]
        self.index = {ident: 0}
        self.words: list[list[int]] = [[]]
        self.tree_edges = set()
        queue = deque([0])
        self.next: dict[tuple[int, int], int] = {}
        while queue:
            a = queue.popleft()
            for i, x in enumerate(gens):
                b = self.elems[a] * x
                j = self.index.get(b)
                if j is None:
                    j = len(self.elems)
                    self.index[b] = j
                    self.elems.append(b)
                    self.words.append(self.words[a] + [i])
                    self.tree_edges.add((a, i))
                    queue.append(j)
                self.next[(a, i)] = j
        self.order = len(self.elems)

    def edge_relator(self, q: int, i: int) -> Word:
        end = self.next[(q, i)]
        seq = [(k, -1) for k in reversed(self.words[end])] + [(k, 1) for k in self.words[q]] + [(i, 1)]
        return compress(seq)

    def schreier_relators(self) -> list[Word]:
        out = []
        for (q, i), _ in self.next.items():
            if (q, i) not in self.tree_edges:
                w = self.edge_relator(q, i)
                if w:
                    out.append(w)
        return out


def _select_relators(n_gens: int, candidates: list[Word], target: int) -> list[Word]:
    """A short sublist of candidates that still presents a group of order ``target``."""
    if n_gens == 0:
        return []
    limit = 64 * target + 2000
    size = min(len(candidates), n_gens + 1)
    while enumerate_cosets(n_gens, candidates[:size], limit) != target:
        if size == len(candidates):
            return list(candidates)
        size = min(len(candidates), 2 * size)
    kept = list(candidates[:size])
    for w in reversed(candidates[:size]):
        trial = [r for r in kept if r is not w]
        if enumerate_cosets(n_gens, trial, limit) == target:
            kept = trial
    return kept


# ---------------------------------------------------------------------------
# presentation records


def export_presentation(H: HybridGroup) -> dict:
    """The four relation families plus the quotient permutations, as plain JSON data."""
    pc = H.radical

    def rword(v):
        return format_word(vector_word(v), "g")

    return {
        "quotient_generators": {
            "degree": H.quotient_degree,
            "images": [list(x.images) for x in H.quotient_generators],
        },
        "quotient_relators": [format_word(w, "q") for w in H.quotient_relators],
        "tails": [rword(t) for t in H.tails],
        "action": [[rword(v) for v in row] for row in H.action],
        "pc_relators": pc.to_json(),
    }


def dumps_presentation(record: dict) -> str:
    return json.dumps(record, sort_keys=True, indent=1) + "\n"


def import_presentation(record: dict) -> HybridGroup:
    try:
        pc = PcPresentation.from_json(record["pc_relators"])
        qg = record["quotient_generators"]
        degree = int(qg["degree"])
        qgens = [Permutation(x) for x in qg["images"]]
        m = len(pc)

        def vec(text):
            v = [0] * m
            for i, e in parse_word(text, "g"):
                v[i] = e
            return tuple(v)

        relators = [parse_word(t, "q") for t in record["quotient_relators"]]
        tails = [vec(t) for t in record["tails"]]
        action = [[vec(t) for t in row] for row in record["action"]]
    except (KeyError, TypeError, IndexError) as exc:
        raise HybridError(f"malformed presentation record: {exc}") from exc
    if len(tails) != len(relators) or len(action) != len(qgens):
        raise HybridError("presentation sections have inconsistent lengths")
    return HybridGroup(pc, qgens, degree, relators, tails, action)


@dataclass
class VerificationResult:
    ok: bool
    failed_relator: int | None = None
    section: str | None = None
    order: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def presentation_relations(record: dict) -> list[tuple[str, Word, Word]]:
    """All defining relations as (section, lhs, rhs) words over x_1..x_s, g_1..g_m."""
    pc = PcPresentation.from_json(record["pc_relators"])
    s = len(record["quotient_generators"]["images"])
    m = len(pc)

    def g(word):
        return [(s + i, e) for i, e in word]

    def gw(text):
        return g(parse_word(text, "g"))

    rels = []
    for j in range(m):
        rels.append(("pc", [(s + j, pc.relative_orders[j])], gw(record["pc_relators"]["power"][j])))
        for k in range(j + 1, m):
            lhs = [(s + j, -1), (s + k, 1), (s + j, 1)]
            rels.append(("pc", lhs, gw(record["pc_relators"]["conjugate"][j][k - j - 1])))
    for i, row in enumerate(record["action"]):
        for j, t in enumerate(row):
            rels.append(("action", [(i, -1), (s + j, 1), (i, 1)], gw(t)))
    for w, t in zip(record["quotient_relators"], record["tails"]):
        rels.append(("quotient", parse_word(w, "q"), gw(t)))
    return rels


def verify_presentation(
    record: dict,
    images: Sequence,
    target_order: int,
    multiply: Callable | None = None,
    inverse: Callable | None = None,
    identity=None,
    group_order: Callable | None = None,
) -> VerificationResult:
    """Check that ``images`` satisfy every relation and generate a group of ``target_order``.

    Defaults handle permutations; pass ``multiply``/``inverse``/``identity``
    for other element types (the generated group is then enumerated).
    """
    images = list(images)
    if images and isinstance(images[0], Permutation) and multiply is None:
        multiply = lambda a, b: a * b  # noqa: E731
        inverse = lambda a: a.inverse()  # noqa: E731
        identity = Permutation.identity(images[0].degree)
        if group_order is None:
            group_order = lambda gens: PermGroup(gens, degree=identity.degree).order()  # noqa: E731
    if multiply is None or inverse is None or identity is None:
        raise ValueError("multiply, inverse and identity are required for non-permutation images")

    def power(x, e):
        r = identity
        base = x if e >= 0 else inverse(x)
        for _ in range(abs(e)):
            r = multiply(r, base)
        return r

    def evaluate(word):
        r = identity
        for i, e in word:
            r = multiply(r, power(images[i], e))
        return r

    for k, (section, lhs, rhs) in enumerate(presentation_relations(record)):
        if evaluate(lhs) != evaluate(rhs):
            return VerificationResult(False, k, section)
    if group_order is None:
        group_order = lambda gens: _closure_order(gens, multiply, identity)  # noqa: E731
    order = group_order(images)
    return VerificationResult(order == target_order, None, None if order == target_order else "order", order)


def _closure_order(gens, multiply, identity) -> int:
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = multiply(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen)


def find_seed(G: PermGroup) -> Permutation:
    """A prime-order element whose normal closure is elementary abelian (identity if none)."""
    from ..classes import conjugacy_classes

    header = conjugacy_classes(G)
    best = None
    for cc in header.classes[1:]:
        o = cc.rep_order
        if any(o % q == 0 for q in range(2, math.isqrt(o) + 1)):
            continue
        N = normal_closure(G, cc.representative)
        if _is_elementary_abelian(N) and (best is None or N.order() > best[0]):
            best = (N.order(), cc.representative)
    return best[1] if best else G.identity()


def hybrid_class_count(H: HybridGroup) -> int:
    """Number of conjugacy classes, computed with hybrid arithmetic only."""
    gens = H.generators()
    inv = [H.inverse(g) for g in gens]
    seen = set()
    count = 0
    for x in H.elements():
        if x in seen:
            continue
        count += 1
        orbit = [x]
        seen.add(x)
        for y in orbit:
            for g, gi in zip(gens, inv):
                z = H.multiply(H.multiply(gi, y), g)
                if z not in seen:
                    seen.add(z)
                    orbit.append(z)
    return count
