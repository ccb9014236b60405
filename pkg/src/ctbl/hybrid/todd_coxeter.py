"""Coset enumeration (HLT strategy with coincidence handling).

Only the trivial subgroup is enumerated: the result is the order of the
group presented by the relators, or None when the coset limit is reached.
"""

from __future__ import annotations

from .words import Word, letters


class CosetLimit(Exception):
    pass


def _columns(word: Word) -> list[int]:
    return [2 * i + (0 if s > 0 else 1) for i, s in letters(word)]


def enumerate_cosets(n_gens: int, relators: list[Word], limit: int = 100_000) -> int | None:
    """Order of <x_1..x_n | relators>, or None if more than ``limit`` cosets are needed."""
    if n_gens == 0:
        return 1
    ncols = 2 * n_gens
    rels = [_columns(r) for r in relators if r]
    table: list[list[int | None]] = [[None] * ncols]
    parent = [0]

    def rep(k: int) -> int:
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def define(c: int, col: int) -> int:
        if len(table) >= limit:
            raise CosetLimit
        n = len(table)
        table.append([None] * ncols)
        parent.append(n)
        table[c][col] = n
        table[n][col ^ 1] = c
        return n

    def merge(k: int, l: int, queue: list[int]) -> None:
        k, l = rep(k), rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        parent[l] = k
        queue.append(l)

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for col in range(ncols):
                f = table[e][col]
                if f is None:
                    continue
                if table[f][col ^ 1] == e:
                    table[f][col ^ 1] = None
                e1, f1 = rep(e), rep(f)
                if table[e1][col] is not None:
                    merge(f1, table[e1][col], queue)
                elif table[f1][col ^ 1] is not None:
                    merge(e1, table[f1][col ^ 1], queue)
                else:
                    table[e1][col] = f1
                    table[f1][col ^ 1] = e1

    def scan_and_fill(c: int, word: list[int]) -> None:
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] is not None:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            define(f, word[i])

    try:
        c = 0
        while c < len(table):
            for w in rels:
                if parent[c] != c:
                    break
                scan_and_fill(c, w)
            if parent[c] == c:
                for col in range(ncols):
                    if table[c][col] is None:
                        define(c, col)
            c += 1
    except CosetLimit:
        return None
    return sum(1 for k in range(len(parent)) if parent[k] == k)
