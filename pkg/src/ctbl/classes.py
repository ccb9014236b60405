"""Character-table header: conjugacy classes, centralizer orders, power maps."""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass, field

from .perm import PermGroup, Permutation, conjugacy_orbit, prime_factors

# classes are enumerated element-by-element below this group order
ENUMERATION_LIMIT = 10**6


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    size: int
    rep_order: int
    centralizer_order: int


@dataclass
class TableHeader:
    """The group-dependent half of a character table.

    ``power_maps[p][c]`` is the index of the class containing ``x**p`` for x in
    class ``c``; only primes are stored.
    """

    group_order: int
    classes: list[ConjugacyClass]
    power_maps: dict[int, tuple[int, ...]] = field(default_factory=dict)
    _lookup: dict[Permutation, int] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> list[int]:
        return [c.size for c in self.classes]

    @property
    def orders(self) -> list[int]:
        return [c.rep_order for c in self.classes]

    @property
    def centralizer_orders(self) -> list[int]:
        return [c.centralizer_order for c in self.classes]

    @property
    def representatives(self) -> list[Permutation]:
        return [c.representative for c in self.classes]

    @property
    def exponent(self) -> int:
        e = 1
        for o in self.orders:
            e = e * o // math.gcd(e, o)
        return e

    def class_of(self, x: Permutation) -> int:
        return self._lookup[x]

    def power_map(self, k: int) -> tuple[int, ...]:
        """Map c -> class of x**k, composed from the stored prime maps.

        k is first reduced modulo the order of each class, so every prime
        needed is at most the largest element order.
        """
        out = []
        for c, o in enumerate(self.orders):
            m = k % o
            if m == 0:
                out.append(0)
                continue
            d = c
            for p in prime_factors(m):
                while m % p == 0:
                    m //= p
                    d = self.power_maps[p][d]
            out.append(d)
        return tuple(out)

    def inverse_classes(self) -> tuple[int, ...]:
        return self.power_map(-1 % self.exponent) if self.exponent > 1 else tuple(range(len(self)))

    def fingerprint(self) -> str:
        """Hash of the class ordering (representatives and sizes)."""
        data = [[list(c.representative.images), c.size] for c in self.classes]
        return hashlib.sha256(json.dumps(data).encode()).hexdigest()[:16]

    def to_json(self) -> dict:
        return {
            "group_order": self.group_order,
            "classes": [
                {
                    "order": c.rep_order,
                    "size": c.size,
                    "centralizer_order": c.centralizer_order,
                    "representative": list(c.representative.images),
                }
                for c in self.classes
            ],
            "powermap": {str(p): list(m) for p, m in sorted(self.power_maps.items())},
        }


def _class_sort_key(cc: ConjugacyClass):
    return (cc.rep_order, cc.size, cc.representative.images)


def conjugacy_classes(G: PermGroup, seed: int = 0) -> TableHeader:
    """Conjugacy classes of G, one representative (the least element) each.

    Classes are discovered from random elements first; the class sizes must
    sum to |G|, and if random search stalls the remaining classes are found by
    sweeping the elements of G.
    """
    order = G.order()
    if order > ENUMERATION_LIMIT:
        raise ValueError(f"group order {order} exceeds the desk-scale limit")
    rng = random.Random(seed)
    lookup: dict[Permutation, int] = {}
    found: list[tuple[Permutation, int]] = []
    covered = 0

    def add_class(g: Permutation):
        nonlocal covered
        orbit = conjugacy_orbit(G, g)
        rep = min(orbit)
        idx = len(found)
        for y in orbit:
            lookup[y] = idx
        found.append((rep, len(orbit)))
        covered += len(orbit)

    add_class(G.identity())
    misses = 0
    while covered < order and misses < 50:
        g = G.random_element(rng)
        if g in lookup:
            misses += 1
            continue
        misses = 0
        add_class(g)
    if covered < order:
        for g in G.elements():
            if g not in lookup:
                add_class(g)
                if covered == order:
                    break
    assert covered == order, "class sizes do not sum to the group order"

    raw = [ConjugacyClass(rep, size, rep.order(), order // size) for rep, size in found]
    ident = raw[0]
    rest = sorted(range(1, len(raw)), key=lambda i: _class_sort_key(raw[i]))
    perm = [0] + rest
    new_index = {old: new for new, old in enumerate(perm)}
    classes = [raw[i] for i in perm]
    lookup = {g: new_index[i] for g, i in lookup.items()}
    assert classes[0] is ident
    return TableHeader(group_order=order, classes=classes, _lookup=lookup)


def class_of(header: TableHeader, G: PermGroup, x: Permutation) -> int:
    """Index of the class of x; raises ValueError when x is not in G."""
    idx = header._lookup.get(x)
    if idx is None:
        if x.degree != G.degree or not G.contains(x):
            raise ValueError(f"{x!r} is not an element of the group")
        raise AssertionError("element of G missing from the class lookup")
    return idx


def _primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if all(p % q for q in range(2, int(p**0.5) + 1))]


def derive_power_maps(header: TableHeader, G: PermGroup) -> TableHeader:
    """Fill in the p-th power map for every prime p up to the largest element order."""
    maps = {}
    for p in _primes_upto(max(header.orders)):
        maps[p] = tuple(class_of(header, G, c.representative**p) for c in header.classes)
    header.power_maps = maps
    return header


def table_header(G: PermGroup) -> TableHeader:
    return derive_power_maps(conjugacy_classes(G), G)
