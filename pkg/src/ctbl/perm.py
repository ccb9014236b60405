"""Permutations and permutation groups with stabilizer chains.

Permutations act on the right: ``(p * q)[i] == q[p[i]]``, so ``p * q`` means
"apply p, then q". Conjugation is ``x ** g == g**-1 * x * g``. All points are
0-based.
"""

from __future__ import annotations

import math
import random
from collections import deque
from typing import Iterable, Iterator, Sequence

# Desk-scale limits; algorithms below may enumerate orbits up to these sizes.
MAX_ORDER = 10**7
MAX_DEGREE = 10**4


class Permutation:
    """An immutable permutation of ``{0, ..., degree-1}``."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        img = tuple(images)
        if check:
            if sorted(img) != list(range(len(img))):
                raise ValueError(f"not a permutation: {img!r}")
        self._img = img
        self._hash = hash(img)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:]):
                img[a] = b
            if cyc:
                img[cyc[-1]] = cyc[0]
        return cls(img)

    @property
    def images(self) -> tuple[int, ...]:
        return self._img

    @property
    def degree(self) -> int:
        return len(self._img)

    def __call__(self, point: int) -> int:
        return self._img[point]

    def __getitem__(self, point: int) -> int:
        return self._img[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        q = other._img
        return Permutation([q[i] for i in self._img], check=False)

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._img)
        for i, j in enumerate(self._img):
            inv[j] = i
        return Permutation(inv, check=False)

    def __pow__(self, other):
        if isinstance(other, Permutation):
            # conjugation x ** g = g^-1 x g
            g = other._img
            img = [0] * len(g)
            x = self._img
            for i in range(len(g)):
                img[g[i]] = g[x[i]]
            return Permutation(img, check=False)
        e = int(other)
        if e < 0:
            return self.inverse() ** (-e)
        result = Permutation.identity(len(self._img))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def __hash__(self) -> int:
        return self._hash

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._img))

    def order(self) -> int:
        o = 1
        for length in self.cycle_type():
            o = o * length // math.gcd(o, length)
        return o

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted tuple of cycle lengths (fixed points included)."""
        seen = [False] * len(self._img)
        lengths = []
        for i in range(len(self._img)):
            if seen[i]:
                continue
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self._img[j]
                n += 1
            lengths.append(n)
        return tuple(sorted(lengths))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self._img)):
            if i in seen or self._img[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self._img[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self._img[j]
            out.append(tuple(cyc))
        return out

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def _strip_word(word):
    return tuple(word)


class _Level:
    """One level of a stabilizer chain."""

    __slots__ = ("point", "gens", "transversal", "tree")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Permutation] = []
        # orbit point -> u with point ** u == orbit point
        self.transversal: dict[int, Permutation] = {}
        # orbit point -> (parent point, index into gens); root maps to None
        self.tree: dict[int, tuple[int, int] | None] = {}

    def rebuild_orbit(self):
        self.transversal = {self.point: None}
        self.tree = {self.point: None}
        queue = deque([self.point])
        order = [self.point]
        while queue:
            b = queue.popleft()
            for k, s in enumerate(self.gens):
                c = s._img[b]
                if c not in self.tree:
                    self.tree[c] = (b, k)
                    order.append(c)
                    queue.append(c)
        degree = self.gens[0].degree if self.gens else 0
        ident = Permutation.identity(degree) if degree else None
        for b in order:
            parent = self.tree[b]
            if parent is None:
                self.transversal[b] = ident
            else:
                pb, k = parent
                self.transversal[b] = self.transversal[pb] * self.gens[k]


class PermGroup:
    """A permutation group carried by a base and strong generating set.

    Construction runs a deterministic Schreier-Sims, so the chain is exact.
    Instances are treated as immutable once built.
    """

    def __init__(
        self,
        generators: Iterable[Permutation],
        degree: int | None = None,
        base_prefix: Sequence[int] = (),
    ):
        gens = [g for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError("generators of differing degree")
        self.degree = degree
        self._identity = Permutation.identity(degree)
        self.generators: list[Permutation] = []
        self._levels: list[_Level] = [_Level(b) for b in base_prefix]
        for lv in self._levels:
            lv.transversal = {lv.point: self._identity}
            lv.tree = {lv.point: None}
        for g in gens:
            self._add_generator(g)
        self._order: int | None = None

    # ------------------------------------------------------------------
    # chain construction

    def _strip(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        h = g
        for i in range(start, len(self._levels)):
            lv = self._levels[i]
            b = h._img[lv.point]
            u = lv.transversal.get(b)
            if u is None:
                return h, i
            if b != lv.point:
                h = h * u.inverse()
        return h, len(self._levels)

    def _new_level_for(self, h: Permutation) -> None:
        for pt, im in enumerate(h._img):
            if pt != im:
                lv = _Level(pt)
                lv.transversal = {pt: self._identity}
                lv.tree = {pt: None}
                self._levels.append(lv)
                return
        raise AssertionError("identity has no moved point")

    def _add_generator(self, g: Permutation) -> None:
        h, j = self._strip(g)
        if j == len(self._levels) and h.is_identity():
            return
        self.generators.append(g)
        if all(g._img[lv.point] == lv.point for lv in self._levels):
            self._new_level_for(g)
        touched = 0
        for i, lv in enumerate(self._levels):
            lv.gens.append(g)
            touched = i
            if g._img[lv.point] != lv.point:
                break
        for i in range(touched + 1):
            self._levels[i].rebuild_orbit()
        self._complete(touched)
        self._order = None

    def _complete(self, start: int) -> None:
        i = start
        while i >= 0:
            lv = self._levels[i]
            restart = False
            for b, u in list(lv.transversal.items()):
                for s in lv.gens:
                    c = s._img[b]
                    v = lv.transversal[c]
                    sg = u * s * v.inverse()
                    if sg.is_identity():
                        continue
                    h, j = self._strip(sg, i + 1)
                    if j == len(self._levels) and h.is_identity():
                        continue
                    if j == len(self._levels):
                        self._new_level_for(h)
                    for l in range(i + 1, j + 1):
                        self._levels[l].gens.append(h)
                        self._levels[l].rebuild_orbit()
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1

    # ------------------------------------------------------------------
    # queries

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self._levels]

    @property
    def strong_generators(self) -> list[Permutation]:
        seen = {}
        for lv in self._levels:
            for s in lv.gens:
                seen.setdefault(s, None)
        return list(seen)

    @property
    def basic_orbits(self) -> list[list[int]]:
        return [list(lv.transversal) for lv in self._levels]

    def identity(self) -> Permutation:
        return self._identity

    def order(self) -> int:
        if self._order is None:
            o = 1
            for lv in self._levels:
                o *= len(lv.transversal)
            self._order = o
        return self._order

    def __len__(self) -> int:
        return self.order()

    def is_trivial(self) -> bool:
        return self.order() == 1

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise ValueError(f"degree mismatch: {p.degree} != {self.degree}")
        h, j = self._strip(p)
        return j == len(self._levels) and h.is_identity()

    __contains__ = contains

    def membership(self, p: Permutation) -> bool:
        return self.contains(p)

    def factor(self, p: Permutation) -> list[Permutation] | None:
        """Write ``p`` as a product of transversal elements.

        Returns ``[u_k, ..., u_1, u_0]`` with ``p == u_k * ... * u_0`` (``u_i``
        from level ``i``), or None when ``p`` is not in the group.
        """
        if p.degree != self.degree:
            raise ValueError(f"degree mismatch: {p.degree} != {self.degree}")
        h = p
        parts = []
        for lv in self._levels:
            b = h._img[lv.point]
            u = lv.transversal.get(b)
            if u is None:
                return None
            parts.append(u)
            h = h * u.inverse()
        if not h.is_identity():
            return None
        parts.reverse()
        return parts

    def word(self, p: Permutation) -> list[int] | None:
        """A word in :attr:`strong_generators` (list of indices) evaluating to p."""
        sgs = self.strong_generators
        index = {s: k for k, s in enumerate(sgs)}
        h = p
        levels_words = []
        for lv in self._levels:
            b = h._img[lv.point]
            if b not in lv.tree:
                return None
            w = []
            c = b
            while lv.tree[c] is not None:
                pb, k = lv.tree[c]
                w.append(index[lv.gens[k]])
                c = pb
            w.reverse()
            levels_words.append(w)
            h = h * lv.transversal[b].inverse()
        if not h.is_identity():
            return None
        word: list[int] = []
        for w in reversed(levels_words):
            word.extend(w)
        return word

    def elements(self) -> Iterator[Permutation]:
        """Iterate over all group elements (desk scale only)."""
        levels = self._levels
        if not levels:
            yield self._identity
            return

        def rec(i: int, acc: Permutation):
            if i < 0:
                yield acc
                return
            for u in levels[i].transversal.values():
                yield from rec(i - 1, acc * u)

        yield from rec(len(levels) - 1, self._identity)

    def random_element(self, rng: random.Random | None = None) -> Permutation:
        rng = rng or random
        g = self._identity
        for lv in reversed(self._levels):
            g = g * rng.choice(list(lv.transversal.values()))
        return g

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def is_normal_in(self, other: "PermGroup") -> bool:
        return all(self.contains(h**s) for h in self.generators for s in other.generators)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def exponent(self) -> int:
        e = 1
        for g in self.elements():
            o = g.order()
            e = e * o // math.gcd(e, o)
        return e

    def subgroup(self, gens: Iterable[Permutation]) -> "PermGroup":
        return PermGroup(gens, degree=self.degree)

    def __repr__(self) -> str:
        return f"<PermGroup degree={self.degree} order={self.order()}>"


def schreier_sims(generators: Sequence[Permutation], degree: int | None = None) -> PermGroup:
    """Build a verified stabilizer chain; an empty list gives the trivial group."""
    if not generators:
        return PermGroup([], degree=degree or 1)
    return PermGroup(generators, degree=degree)


def membership(G: PermGroup, p: Permutation) -> bool:
    return G.contains(p)


def _require_member(G: PermGroup, x: Permutation) -> None:
    if not G.contains(x):
        raise ValueError(f"{x!r} is not an element of the group")


def conjugacy_orbit(G: PermGroup, x: Permutation) -> dict[Permutation, Permutation]:
    """Orbit of x under conjugation, mapping each conjugate y to some t with x**t == y."""
    orbit = {x: G.identity()}
    queue = deque([x])
    gens = G.generators
    while queue:
        y = queue.popleft()
        t = orbit[y]
        for s in gens:
            z = y**s
            if z not in orbit:
                orbit[z] = t * s
                queue.append(z)
    return orbit


def _stabilizer_from_orbit(G: PermGroup, orbit: dict, act, target_order: int) -> PermGroup:
    """Stabilizer of the orbit root, generated by Schreier generators."""
    H = PermGroup([], degree=G.degree)
    if target_order == 1:
        return H
    for y, t in orbit.items():
        for s in G.generators:
            z = act(y, s)
            sg = t * s * orbit[z].inverse()
            if not sg.is_identity() and not H.contains(sg):
                H._add_generator(sg)
                if H.order() == target_order:
                    return H
    return H


def centralizer(G: PermGroup, x: Permutation) -> PermGroup:
    """C_G(x) by orbit-stabilizer on the conjugation action."""
    _require_member(G, x)
    orbit = conjugacy_orbit(G, x)
    target = G.order() // len(orbit)
    return _stabilizer_from_orbit(G, orbit, lambda y, s: y**s, target)


def normal_closure(G: PermGroup, g: Permutation | Iterable[Permutation]) -> PermGroup:
    """Smallest normal subgroup of G containing g (or all elements of an iterable)."""
    seeds = [g] if isinstance(g, Permutation) else list(g)
    for s in seeds:
        _require_member(G, s)
    H = PermGroup([], degree=G.degree)
    queue = deque(seeds)
    while queue:
        h = queue.popleft()
        if h.is_identity() or H.contains(h):
            continue
        H._add_generator(h)
        for s in G.generators:
            queue.append(h**s)
    return H


def subgroup_conjugate(H: PermGroup, g: Permutation) -> PermGroup:
    return PermGroup([h**g for h in H.generators], degree=H.degree)


def _subgroup_key(H: PermGroup) -> frozenset:
    return frozenset(H.elements())


def normalizer(G: PermGroup, H: PermGroup) -> PermGroup:
    """N_G(H) as the stabilizer of H under conjugation (desk scale: H enumerated)."""
    root = _subgroup_key(H)
    orbit = {root: G.identity()}
    reps = {root: H}
    queue = deque([root])
    while queue:
        key = queue.popleft()
        t = orbit[key]
        K = reps[key]
        for s in G.generators:
            K2 = subgroup_conjugate(K, s)
            key2 = _subgroup_key(K2)
            if key2 not in orbit:
                orbit[key2] = t * s
                reps[key2] = K2
                queue.append(key2)
    target = G.order() // len(orbit)

    def act(key, s):
        return frozenset(y**s for y in key)

    N = PermGroup(H.generators, degree=G.degree)
    if N.order() == target:
        return N
    for key, t in orbit.items():
        for s in G.generators:
            z = act(key, s)
            sg = t * s * orbit[z].inverse()
            if not N.contains(sg):
                N._add_generator(sg)
                if N.order() == target:
                    return N
    return N


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def _p_element_extending(N: PermGroup, P: PermGroup, p: int, rng: random.Random):
    """Some h in N with h not in P and h**p in P (N normalizes P), else None."""

    def try_elt(g):
        o = g.order()
        m = o // p_part(o, p)
        h = g**m
        if P.contains(h):
            return None
        while not P.contains(h**p):
            h = h**p
        return h

    if N.order() == P.order():
        return None
    for _ in range(64):
        h = try_elt(N.random_element(rng))
        if h is not None:
            return h
    for g in N.elements():
        h = try_elt(g)
        if h is not None:
            return h
    return None


def sylow_subgroup(G: PermGroup, p: int, seed: int = 0) -> PermGroup:
    """A Sylow p-subgroup, grown one p-step at a time inside normalizers."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target = p_part(G.order(), p)
    P = PermGroup([], degree=G.degree)
    rng = random.Random(seed)
    while P.order() < target:
        N = normalizer(G, P) if P.order() > 1 else G
        h = _p_element_extending(N, P, p, rng)
        if h is None:
            raise AssertionError("no extending p-element found; Sylow theory violated")
        P = PermGroup(P.generators + [h], degree=G.degree)
    return P


def derived_subgroup(G: PermGroup) -> PermGroup:
    comms = []
    gens = G.generators
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            c = a.inverse() * b.inverse() * a * b
            if not c.is_identity():
                comms.append(c)
    if not comms:
        return PermGroup([], degree=G.degree)
    return normal_closure(G, comms)


def is_solvable(G: PermGroup) -> bool:
    H = G
    while not H.is_trivial():
        D = derived_subgroup(H)
        if D.order() == H.order():
            return False
        H = D
    return True


def group_from_elements(elements: Iterable[Permutation], degree: int) -> PermGroup:
    return PermGroup(list(elements), degree=degree)
