"""Reference character tables by the Dixon-Schneider method.

Class multiplication coefficients are reduced modulo a prime p = 1 mod exp(G)
with p > 2 sqrt|G|. Their common eigenvectors give the central characters
omega_chi mod p, the orthogonality relation fixes each degree, and the
multiplicities of the eigenvalues of each class representative lift the
values to exact cyclotomic numbers. Desk-scale only (|G| <= 10^5).
"""

from __future__ import annotations

import math

from .classes import TableHeader, table_header
from .classfunction import ClassFunction, canonical_sort
from .cyclotomic import Cyclotomic
from .perm import PermGroup, prime_factors

ORACLE_LIMIT = 10**5


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, math.isqrt(n) + 1))


def choose_prime(group_order: int, exponent: int) -> int:
    p = exponent + 1
    while not (_is_prime(p) and p * p > 4 * group_order):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    return 1


def _nullspace(A: list[list[int]], p: int) -> list[list[int]]:
    """Basis (as vectors) of {v : A v = 0} over F_p."""
    rows = [r[:] for r in A]
    ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f] % p
        basis.append(v)
    return basis


def _restrict(M, basis, p):
    """R with M B = B R for the column basis B of an M-invariant subspace."""
    k = len(M)
    d = len(basis)
    # pick d pivot rows of B
    rows = [[basis[j][i] for j in range(d)] for i in range(k)]
    chosen = []
    work = []
    for i in range(k):
        v = rows[i][:]
        for (ci, w, pc) in work:
            if v[pc]:
                f = v[pc]
                v = [(a - f * b) % p for a, b in zip(v, w)]
        pc = next((c for c in range(d) if v[c]), None)
        if pc is None:
            continue
        inv = pow(v[pc], -1, p)
        v = [a * inv % p for a in v]
        work.append((i, v, pc))
        chosen.append(i)
        if len(chosen) == d:
            break
    Bsub = [rows[i] for i in chosen]
    MB = [[sum(M[r][s] * basis[j][s] for s in range(k)) % p for j in range(d)] for r in range(k)]
    MBsub = [MB[i] for i in chosen]
    # solve Bsub R = MBsub
    aug = [Bsub[i][:] + MBsub[i][:] for i in range(d)]
    for c in range(d):
        piv = next(i for i in range(c, d) if aug[i][c] % p)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, p)
        aug[c] = [v * inv % p for v in aug[c]]
        for i in range(d):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[c])]
    return [row[d:] for row in aug]


def _eigenvalues(R, p):
    d = len(R)
    found = []
    for lam in range(p):
        A = [[(R[i][j] - (lam if i == j else 0)) % p for j in range(d)] for i in range(d)]
        ns = _nullspace(A, p)
        if ns:
            found.append((lam, ns))
            if sum(len(b) for _, b in found) == d:
                break
    return found


def class_matrices(G: PermGroup, header: TableHeader) -> list[list[list[int]]]:
    """M_j[r][s] = #{x in C_j : g_s x^-1 in C_r}."""
    k = len(header)
    members: list[list] = [[] for _ in range(k)]
    for g, c in header._lookup.items():
        members[c].append(g)
    reps = header.representatives
    mats = []
    for j in range(k):
        M = [[0] * k for _ in range(k)]
        inv = [x.inverse() for x in members[j]]
        for s in range(k):
            for xi in inv:
                M[header.class_of(reps[s] * xi)][s] += 1
        mats.append(M)
    return mats


def oracle_table(G: PermGroup, header: TableHeader | None = None) -> list[ClassFunction]:
    """All irreducible characters of G, canonically sorted."""
    order = G.order()
    if order > ORACLE_LIMIT:
        raise ValueError(f"group order {order} too large for the oracle")
    header = header if header is not None else table_header(G)
    k = len(header)
    e = header.exponent
    p = choose_prime(order, e)
    mats = class_matrices(G, header)
    spaces = [[[int(i == j) for i in range(k)] for j in range(k)]]
    for M in mats[1:]:
        if all(len(s) == 1 for s in spaces):
            break
        new = []
        for basis in spaces:
            if len(basis) == 1:
                new.append(basis)
                continue
            R = _restrict(M, basis, p)
            for _, ns in _eigenvalues(R, p):
                new.append([
                    [sum(basis[j][r] * v[j] for j in range(len(basis))) % p for r in range(k)]
                    for v in ns
                ])
        spaces = new
    if len(spaces) != k or any(len(s) != 1 for s in spaces):
        raise AssertionError("class matrices did not split into one-dimensional spaces")
    sizes = header.sizes
    inverse = header.inverse_classes()
    z = pow(_primitive_root(p), (p - 1) // e, p)
    chars = []
    for (v,) in spaces:
        inv0 = pow(v[0], -1, p)
        omega = [a * inv0 % p for a in v]
        s = sum(omega[r] * omega[inverse[r]] * pow(sizes[r], -1, p) for r in range(k)) % p
        d2 = order * pow(s, -1, p) % p
        d = next(d for d in range(1, math.isqrt(order) + 1) if d * d % p == d2)
        modvals = [d * omega[r] * pow(sizes[r], -1, p) % p for r in range(k)]
        values = []
        for r, cc in enumerate(header.classes):
            o = cc.rep_order
            zo = pow(z, e // o, p)
            pw = [modvals[header.power_map(l)[r]] if l else d for l in range(o)]
            coeffs = {}
            inv_o = pow(o, -1, p)
            for kk in range(o):
                m = sum(pw[l] * pow(zo, (-kk * l) % o, p) for l in range(o)) * inv_o % p
                if m:
                    coeffs[kk] = m
            values.append(Cyclotomic.from_sum(o, coeffs))
        chars.append(ClassFunction(values))
    return canonical_sort(chars)
