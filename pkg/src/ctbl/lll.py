"""Character inner products and LLL extraction of irreducible characters.

Lattice vectors are class functions with algebraic-integer values. For the
Gram matrix each value is flattened into its coefficients over powers of
E(N) (N a common conductor); on such coordinates the inner product is the
bilinear form

    <x, y> = 1/(|G| phi(N)) sum_c |c| sum_{a,b} x[c,a] y[c,b] c_N(a - b)

where c_N is Ramanujan's sum. It agrees with the character inner product
whenever the latter is rational, which holds for virtual characters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .classes import TableHeader
from .classfunction import ClassFunction
from .cyclotomic import ZERO, Cyclotomic

DELTA = Fraction(3, 4)


def inner_product(chi: ClassFunction, psi: ClassFunction, header: TableHeader):
    """|G|^-1 sum_i |class_i| chi(h_i) conj(psi(h_i)), exact.

    Returns a Fraction when the value is rational, otherwise a Cyclotomic.
    """
    if len(chi) != len(header) or len(psi) != len(header):
        raise ValueError("class function length does not match the header")
    total = ZERO
    rational_total = Fraction(0)
    for size, a, b in zip(header.sizes, chi.values, psi.values):
        if a.is_zero() or b.is_zero():
            continue
        qa, qb = a.try_rational(), b.try_rational()
        if qa is not None and qb is not None:
            rational_total += size * qa * qb
        else:
            total = total + (a * b.conjugate()) * size
    total = total + rational_total
    total = total / header.group_order
    q = total.try_rational()
    return q if q is not None else total


def norm(chi: ClassFunction, header: TableHeader):
    return inner_product(chi, chi, header)


# ---------------------------------------------------------------------------
# coordinates


def _ramanujan(N: int, d: int) -> int:
    g = math.gcd(N, d)
    m = N // g
    # mu(m) * phi(N) / phi(m)
    mu = 1
    x = m
    p = 2
    while p * p <= x:
        if x % p == 0:
            x //= p
            if x % p == 0:
                return 0
            mu = -mu
        p += 1
    if x > 1:
        mu = -mu
    return mu * _phi(N) // _phi(m)


def _phi(n: int) -> int:
    result = n
    x = n
    p = 2
    while p * p <= x:
        if x % p == 0:
            while x % p == 0:
                x //= p
            result -= result // p
        p += 1
    if x > 1:
        result -= result // x
    return result


class Embedding:
    """Integer coordinates for class functions over one header."""

    def __init__(self, header: TableHeader, conductor: int):
        self.header = header
        self.N = conductor
        self.k = len(header)
        N = conductor
        R = np.array([[_ramanujan(N, (a - b) % N) for b in range(N)] for a in range(N)], dtype=object)
        self._R = R
        self._scale = header.group_order * _phi(N)
        self._sizes = header.sizes

    @classmethod
    def for_functions(cls, header: TableHeader, chars: Sequence[ClassFunction]) -> "Embedding":
        N = 1
        for chi in chars:
            for v in chi.values:
                N = N * v.conductor // math.gcd(N, v.conductor)
        return cls(header, N)

    def coords(self, chi: ClassFunction) -> np.ndarray:
        N = self.N
        out = np.zeros(self.k * N, dtype=object)
        out[:] = 0
        for c, v in enumerate(chi.values):
            for a, coef in v.embed(N).items():
                if isinstance(coef, Fraction):
                    raise ValueError("lattice vectors must take algebraic-integer values")
                out[c * N + a] = coef
        return out

    def function(self, coords: np.ndarray) -> ClassFunction:
        N = self.N
        vals = []
        for c in range(self.k):
            block = coords[c * N:(c + 1) * N]
            vals.append(Cyclotomic.from_sum(N, {a: int(x) for a, x in enumerate(block) if x}))
        return ClassFunction(vals)

    def weighted(self, X: np.ndarray) -> np.ndarray:
        """Rows of X mapped through the block-diagonal form matrix."""
        N = self.N
        out = np.empty_like(X)
        for c in range(self.k):
            blk = X[:, c * N:(c + 1) * N]
            out[:, c * N:(c + 1) * N] = blk.dot(self._R) * self._sizes[c]
        return out

    def norms(self, X: np.ndarray) -> list[int]:
        if X.shape[0] == 0:
            return []
        raw = (X * self.weighted(X)).sum(axis=1)
        return [int(x) // self._scale for x in raw]

    def gram(self, X: np.ndarray, Y: np.ndarray | None = None) -> list[list[int]]:
        if Y is None:
            Y = X
        if X.shape[0] == 0 or Y.shape[0] == 0:
            return [[] for _ in range(X.shape[0])]
        raw = X.dot(self.weighted(Y).T)
        out = []
        for row in raw:
            r = []
            for x in row:
                q, rem = divmod(int(x), self._scale)
                if rem:
                    raise ValueError("inner product of lattice vectors is not an integer")
                r.append(q)
            out.append(r)
        return out


# ---------------------------------------------------------------------------
# LLL on Gram matrices (dependent generating sets allowed)


def lll_gram(gram: Sequence[Sequence[int]], delta: Fraction = DELTA):
    """LLL-reduce a positive semidefinite integral Gram matrix.

    Returns ``(T, G)``: a unimodular integer matrix T (rows give the new basis
    in terms of the old) and the new Gram matrix ``T gram T^t``. Linear
    dependencies surface as zero vectors, which are left at the front.
    """
    n = len(gram)
    G = [[int(x) for x in row] for row in gram]
    T = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n <= 1:
        return T, G
    mu = [[Fraction(0)] * n for _ in range(n)]
    B = [Fraction(0)] * n
    half = Fraction(1, 2)

    def gram_schmidt(k):
        for j in range(k):
            if B[j] == 0:
                mu[k][j] = Fraction(0)
                continue
            s = Fraction(G[k][j])
            for i in range(j):
                if B[i]:
                    s -= mu[j][i] * mu[k][i] * B[i]
            mu[k][j] = s / B[j]
        b = Fraction(G[k][k])
        for j in range(k):
            if B[j]:
                b -= mu[k][j] * mu[k][j] * B[j]
        B[k] = b

    def red(k, l):
        m = mu[k][l]
        if abs(m) <= half:
            return
        q = math.floor(m + half)
        Tk, Tl = T[k], T[l]
        for j in range(n):
            Tk[j] -= q * Tl[j]
        Gk, Gl = G[k], G[l]
        diag = Gk[k] - q * Gl[k] - q * (Gk[l] - q * Gl[l])
        for j in range(n):
            if j != k:
                Gk[j] -= q * Gl[j]
        Gk[k] = diag
        for j in range(n):
            G[j][k] = Gk[j]
        mu[k][l] -= q
        for i in range(l):
            mu[k][i] -= q * mu[l][i]

    def swap(k, kmax):
        T[k], T[k - 1] = T[k - 1], T[k]
        G[k], G[k - 1] = G[k - 1], G[k]
        for row in G:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        m = mu[k][k - 1]
        Bn = B[k] + m * m * B[k - 1]
        if Bn == 0:
            B[k], B[k - 1] = B[k - 1], B[k]
            mu[k][k - 1] = Fraction(0)
            for i in range(k + 1, kmax + 1):
                mu[i][k - 1], mu[i][k] = Fraction(0), mu[i][k - 1]
        elif B[k] == 0:
            B[k - 1] = Bn
            mu[k][k - 1] = 1 / m
            for i in range(k + 1, kmax + 1):
                mu[i][k - 1] = mu[i][k - 1] / m
                mu[i][k] = Fraction(0)
        else:
            newmu = m * B[k - 1] / Bn
            B[k] = B[k - 1] * B[k] / Bn
            B[k - 1] = Bn
            mu[k][k - 1] = newmu
            for i in range(k + 1, kmax + 1):
                t = mu[i][k]
                mu[i][k] = mu[i][k - 1] - m * t
                mu[i][k - 1] = t + newmu * mu[i][k]

    gram_schmidt(0)
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            gram_schmidt(k)
        red(k, k - 1)
        if B[k] < (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return T, G


@dataclass
class CharLattice:
    """Integral span of class functions, with its exact Gram matrix."""

    basis: list[ClassFunction]
    gram: list[list[int]] = field(default_factory=list)
    transform: list[list[int]] | None = None

    @classmethod
    def from_characters(cls, chars: Sequence[ClassFunction], header: TableHeader) -> "CharLattice":
        chars = list({c.values: c for c in chars}.values())
        emb = Embedding.for_functions(header, chars)
        X = np.array([emb.coords(c) for c in chars], dtype=object).reshape(len(chars), -1)
        return cls(basis=chars, gram=emb.gram(X))

    def __len__(self) -> int:
        return len(self.basis)


def _combine(T_rows, X):
    return np.array([np.dot(np.array(row, dtype=object), X) for row in T_rows], dtype=object).reshape(
        len(T_rows), X.shape[1]
    )


def lll_reduce(lattice: CharLattice, header: TableHeader, delta: Fraction = DELTA) -> CharLattice:
    """LLL-reduce a lattice of class functions; zero vectors are dropped."""
    if not lattice.basis:
        return CharLattice([], [], [])
    emb = Embedding.for_functions(header, lattice.basis)
    X = np.array([emb.coords(c) for c in lattice.basis], dtype=object).reshape(len(lattice.basis), -1)
    gram = lattice.gram or emb.gram(X)
    T, G = lll_gram(gram, delta)
    keep = [i for i in range(len(T)) if G[i][i] != 0]
    T = [T[i] for i in keep]
    G = [[G[i][j] for j in keep] for i in keep]
    Y = _combine(T, X)
    return CharLattice([emb.function(y) for y in Y], G, T)


def _sign_normalized(chi: ClassFunction) -> ClassFunction:
    return -chi if chi.degree < 0 else chi


def extract_irreducibles(
    lattice: CharLattice | Sequence[ClassFunction],
    header: TableHeader,
    known: Sequence[ClassFunction] = (),
    delta: Fraction = DELTA,
):
    """Find irreducible characters as norm-1 vectors of the lattice.

    Repeats (project away found irreducibles, LLL-reduce, collect norm-1
    vectors) until a round finds nothing new or the table is complete.
    Returns ``(irreducibles, remainder)``; the remainder lattice spans what
    is left once found irreducibles are projected out.
    """
    chars = list(lattice.basis if isinstance(lattice, CharLattice) else lattice)
    k = len(header)
    irr: list[ClassFunction] = []
    irr_keys: set = set()
    for chi in known:
        if chi.values not in irr_keys:
            irr.append(chi)
            irr_keys.add(chi.values)
    if not chars and not irr:
        return [], CharLattice([], [])
    emb = Embedding.for_functions(header, chars + irr)
    width = k * emb.N
    X = np.array([emb.coords(c) for c in chars], dtype=object).reshape(len(chars), width)
    I = np.array([emb.coords(c) for c in irr], dtype=object).reshape(len(irr), width)

    def add_irr(row):
        nonlocal I
        chi = _sign_normalized(emb.function(row))
        if chi.values in irr_keys:
            return False
        irr.append(chi)
        irr_keys.add(chi.values)
        I = np.vstack([I, emb.coords(chi).reshape(1, width)])
        return True

    while len(irr) < k:
        if len(irr) and len(X):
            X = X - np.array(emb.gram(X, I), dtype=object).dot(I)
        X = X[[i for i, d in enumerate(emb.norms(X)) if d != 0]]
        if not len(X):
            break
        found = False
        for row, d in zip(X, emb.norms(X)):
            if d == 1:
                found |= add_irr(row)
        if found:
            continue
        T, G = lll_gram(emb.gram(X), delta)
        keep = [i for i in range(len(T)) if G[i][i] != 0]
        X = _combine([T[i] for i in keep], X)
        for row, i in zip(X, keep):
            if G[i][i] == 1:
                found |= add_irr(row)
        if not found:
            break
    if len(irr) and len(X):
        X = X - np.array(emb.gram(X, I), dtype=object).dot(I)
    rows = [X[i] for i, d in enumerate(emb.norms(X)) if d != 0]
    remainder_basis = [emb.function(r) for r in rows]
    Xr = np.array(rows, dtype=object).reshape(len(rows), width)
    remainder = CharLattice(remainder_basis, emb.gram(Xr) if rows else [])
    return irr, remainder
