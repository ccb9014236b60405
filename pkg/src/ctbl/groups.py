"""Small permutation groups used as examples and test corpus, plus group JSON I/O."""

from __future__ import annotations

import itertools
import json
from pathlib import Path

from .perm import PermGroup, Permutation

P = Permutation.from_cycles


def symmetric(n: int) -> PermGroup:
    if n < 2:
        return PermGroup([], degree=max(n, 1))
    return PermGroup([P(n, (0, 1)), P(n, tuple(range(n)))])


def alternating(n: int) -> PermGroup:
    gens = [P(n, (0, 1, k)) for k in range(2, n)]
    return PermGroup(gens, degree=n)


def cyclic(n: int) -> PermGroup:
    return PermGroup([P(n, tuple(range(n)))], degree=n)


def dihedral(n: int) -> PermGroup:
    """Dihedral group of order 2n on n points."""
    rot = P(n, tuple(range(n)))
    refl = Permutation([(-i) % n for i in range(n)])
    return PermGroup([rot, refl])


def direct_product(*groups: PermGroup) -> PermGroup:
    degree = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            img = list(range(degree))
            for i, j in enumerate(g.images):
                img[offset + i] = offset + j
            gens.append(Permutation(img))
        offset += G.degree
    return PermGroup(gens, degree=degree)


def abelian(*orders: int) -> PermGroup:
    return direct_product(*(cyclic(n) for n in orders))


def _regular(elements: list, mul) -> PermGroup:
    index = {e: i for i, e in enumerate(elements)}
    gens = []
    for g in elements:
        gens.append(Permutation([index[mul(x, g)] for x in elements]))
    return PermGroup([g for g in gens if not g.is_identity()], degree=len(elements))


def quaternion() -> PermGroup:
    """Q8 in its regular representation on 8 points."""
    # units as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elements = [(s, a) for s in (1, -1) for a in range(4)]

    def mul(x, y):
        s, a = table[(x[1], y[1])]
        return (x[0] * y[0] * s, a)

    return _regular(elements, mul)


def _matrix_action(vectors: list[tuple], matrices: list, mul_vec) -> PermGroup:
    index = {v: i for i, v in enumerate(vectors)}
    gens = [Permutation([index[mul_vec(v, M)] for v in vectors]) for M in matrices]
    return PermGroup(gens, degree=len(vectors))


def sl23() -> PermGroup:
    """SL(2,3) acting on the 8 nonzero vectors of F_3^2."""
    vectors = [v for v in itertools.product(range(3), repeat=2) if v != (0, 0)]

    def mul_vec(v, M):
        return tuple((v[0] * M[0][j] + v[1] * M[1][j]) % 3 for j in range(2))

    return _matrix_action(vectors, [((1, 1), (0, 1)), ((0, 2), (1, 0))], mul_vec)


# F_4 = {0, 1, w, w^2} encoded as 0..3 with bits (a + b w)
def _f4_mul(a: int, b: int) -> int:
    # polynomial multiplication mod w^2 + w + 1
    a0, a1 = a & 1, a >> 1
    b0, b1 = b & 1, b >> 1
    c0 = a0 * b0
    c1 = a0 * b1 + a1 * b0
    c2 = a1 * b1
    # w^2 = w + 1
    c0 += c2
    c1 += c2
    return (c0 % 2) | ((c1 % 2) << 1)


def affine_2_4_a5() -> PermGroup:
    """2^4:A5 as the affine group F_4^2 : SL(2,4) on 16 points."""
    vectors = list(itertools.product(range(4), repeat=2))
    index = {v: i for i, v in enumerate(vectors)}

    def apply(v, M):
        return tuple(_f4_mul(v[0], M[0][j]) ^ _f4_mul(v[1], M[1][j]) for j in range(2))

    mats = [((1, 1), (0, 1)), ((0, 1), (1, 0)), ((2, 0), (0, 3))]
    gens = [Permutation([index[apply(v, M)] for v in vectors]) for M in mats]
    gens.append(Permutation([index[(v[0] ^ 1, v[1])] for v in vectors]))
    return PermGroup(gens, degree=16)


def sylow2_s8() -> PermGroup:
    """C2 wr C2 wr C2, a 2-group of order 128 on 8 points."""
    return PermGroup(
        [P(8, (0, 1)), P(8, (0, 2), (1, 3)), P(8, (0, 4), (1, 5), (2, 6), (3, 7))]
    )


def extraspecial_2_1_4() -> PermGroup:
    """2^(1+4)_+ as D8 o D8, built from its regular representation."""
    d8 = [
        (r, f) for f in range(2) for r in range(4)
    ]  # r^r * s^f in D8

    def dmul(x, y):
        r1, f1 = x
        r2, f2 = y
        return ((r1 + (r2 if f1 == 0 else -r2)) % 4, f1 ^ f2)

    # central product: identify the centres (r=2) of both factors
    elems = []
    seen = set()
    for a in d8:
        for b in d8:
            key = _central_key(a, b)
            if key not in seen:
                seen.add(key)
                elems.append(key)

    def mul(x, y):
        a = dmul(x[0], y[0])
        b = dmul(x[1], y[1])
        return _central_key(a, b)

    return _regular(elems, mul)


def _central_key(a, b):
    # (r, f) * z where z = (2, 0): normalise so the second factor has r in {0, 1}
    if b[1] == 0 and b[0] >= 2 or b[1] == 1 and b[0] >= 2:
        a = ((a[0] + 2) % 4, a[1])
        b = ((b[0] - 2) % 4, b[1])
    return (a, b)


def heisenberg(p: int = 3) -> PermGroup:
    """Upper unitriangular 3x3 matrices over F_p (order p^3)."""
    elems = list(itertools.product(range(p), repeat=3))

    def mul(x, y):
        a, b, c = x
        d, e, f = y
        return ((a + d) % p, (b + e) % p, (c + f + a * e) % p)

    return _regular(elems, mul)


def corpus() -> dict[str, PermGroup]:
    """The acceptance corpus of small groups."""
    return {
        "S3": symmetric(3),
        "S4": symmetric(4),
        "A4": alternating(4),
        "A5": alternating(5),
        "S5": symmetric(5),
        "D8": dihedral(4),
        "Q8": quaternion(),
        "SL(2,3)": sl23(),
        "C6": cyclic(6),
        "C2xC4": abelian(2, 4),
        "2^4:A5": affine_2_4_a5(),
        "2-group-128": sylow2_s8(),
    }


def metacyclic(m: int, n: int, r: int, t: int = 0) -> PermGroup:
    """<a, b | a^m, b^n = a^t, b a b^-1 = a^r> in its regular representation."""
    if pow(r, n, m) != 1 % m or (t * (r - 1)) % m:
        raise ValueError("inconsistent metacyclic parameters")
    elems = [(i, j) for j in range(n) for i in range(m)]
    index = {e: k for k, e in enumerate(elems)}

    def mul(x, y):
        i = x[0] + y[0] * pow(r, x[1], m)
        j = x[1] + y[1]
        if j >= n:
            i, j = i + t, j - n
        return (i % m, j)

    gens = [Permutation([index[mul(x, g)] for x in elems]) for g in ((1 % m, 0), (0, 1 % n))]
    return PermGroup([g for g in gens if not g.is_identity()], degree=len(elems))


def p_group_corpus() -> dict[str, PermGroup]:
    """Assorted 2- and 3-groups of order up to 128, for the p-group machinery."""
    return {
        "C2^3": abelian(2, 2, 2),
        "C8": cyclic(8),
        "D8": dihedral(4),
        "Q8": quaternion(),
        "C2xC4": abelian(2, 4),
        "C4xC4": abelian(4, 4),
        "D16": dihedral(8),
        "Q16": metacyclic(8, 2, 7, 4),
        "SD16": metacyclic(8, 2, 3),
        "M16": metacyclic(8, 2, 5),
        "C2xD8": direct_product(cyclic(2), dihedral(4)),
        "C2xQ8": direct_product(cyclic(2), quaternion()),
        "2^(1+4)": extraspecial_2_1_4(),
        "C4wrC2": PermGroup([P(8, (0, 1, 2, 3)), P(8, (0, 4), (1, 5), (2, 6), (3, 7))]),
        "D8xD8": direct_product(dihedral(4), dihedral(4)),
        "2-group-128": sylow2_s8(),
        "C3xC3": abelian(3, 3),
        "3^(1+2)": heisenberg(3),
        "C9:C3": metacyclic(9, 3, 4),
    }


def load_group(path: str | Path) -> PermGroup:
    """Read ``{"degree": int, "generators": [[images...], ...]}``."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return group_from_json(data)


def group_from_json(data: dict) -> PermGroup:
    try:
        degree = int(data["degree"])
        gens = [Permutation(g) for g in data["generators"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed group description: {exc}") from exc
    if any(g.degree != degree for g in gens):
        raise ValueError("generator length does not match degree")
    return PermGroup(gens, degree=degree)


def group_to_json(G: PermGroup) -> dict:
    return {"degree": G.degree, "generators": [list(g.images) for g in G.generators]}
