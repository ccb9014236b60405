"""Polycyclic presentations with prime relative orders and collection to normal form.

An element is an exponent vector ``(e_1, ..., e_m)`` with ``0 <= e_j < p_j``
standing for ``g_1^e_1 ... g_m^e_m``. The relations are

    g_j^p_j = power[j]             (a normal form in g_{j+1}..g_m)
    g_j^-1 g_k g_j = conj[j][k]    (k > j, a normal form in g_{j+1}..g_m)
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

from .words import Word, format_word, parse_word, vector_word

Vector = tuple[int, ...]


class PcPresentation:
    def __init__(
        self,
        relative_orders: Sequence[int],
        power: Sequence[Vector],
        conj: dict[tuple[int, int], Vector],
    ):
        self.relative_orders = list(relative_orders)
        m = len(self.relative_orders)
        self.power = [tuple(v) for v in power]
        self.conj = {k: tuple(v) for k, v in conj.items()}
        self.identity: Vector = (0,) * m
        for j in range(m):
            if any(self.power[j][: j + 1]):
                raise ValueError(f"power relation of g{j + 1} uses earlier generators")
            for k in range(j + 1, m):
                self.conj.setdefault((j, k), self.unit(k))
                if any(self.conj[(j, k)][: j + 1]):
                    raise ValueError(f"conjugate relation g{k + 1}^g{j + 1} uses earlier generators")
        self._mul_gen = lru_cache(maxsize=None)(self._mul_gen_uncached)

    def __len__(self) -> int:
        return len(self.relative_orders)

    @property
    def order(self) -> int:
        return math.prod(self.relative_orders)

    def unit(self, j: int) -> Vector:
        v = [0] * len(self)
        v[j] = 1
        return tuple(v)

    # -- collection ------------------------------------------------------

    def _conj_tail(self, tail: Vector, j: int) -> Vector:
        """tail^g_j for a vector supported on indices > j."""
        r = self.identity
        for k in range(j + 1, len(self)):
            for _ in range(tail[k]):
                r = self.mul(r, self.conj[(j, k)])
        return r

    def _mul_gen_uncached(self, u: Vector, j: int) -> Vector:
        tail = (0,) * (j + 1) + u[j + 1 :]
        if any(tail):
            tail = self._conj_tail(tail, j)
        e = u[j] + 1
        if e == self.relative_orders[j]:
            e = 0
            tail = self.mul(self.power[j], tail)
        return u[:j] + (e,) + tail[j + 1 :]

    def mul(self, u: Vector, v: Vector) -> Vector:
        for j, e in enumerate(v):
            for _ in range(e):
                u = self._mul_gen(u, j)
        return u

    def inv(self, u: Vector) -> Vector:
        j = next((k for k, e in enumerate(u) if e), None)
        if j is None:
            return u
        rest = (0,) * (j + 1) + u[j + 1 :]
        gpart = [0] * len(self)
        gpart[j] = self.relative_orders[j] - u[j]
        return self.mul(self.mul(self.inv(rest), tuple(gpart)), self.inv(self.power[j]))

    def pow(self, u: Vector, n: int) -> Vector:
        if n < 0:
            u, n = self.inv(u), -n
        r = self.identity
        while n:
            if n & 1:
                r = self.mul(r, u)
            u = self.mul(u, u)
            n >>= 1
        return r

    def conjugate(self, u: Vector, v: Vector) -> Vector:
        """v^-1 u v."""
        return self.mul(self.mul(self.inv(v), u), v)

    def evaluate(self, word: Word) -> Vector:
        r = self.identity
        for i, e in word:
            r = self.mul(r, self.pow(self.unit(i), e))
        return r

    def elements(self):
        def rec(j, prefix):
            if j == len(self):
                yield tuple(prefix)
                return
            for e in range(self.relative_orders[j]):
                yield from rec(j + 1, prefix + [e])

        yield from rec(0, [])

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        m = len(self)
        return {
            "relative_orders": self.relative_orders,
            "power": [format_word(vector_word(v)) for v in self.power],
            "conjugate": [
                [format_word(vector_word(self.conj[(j, k)])) for k in range(j + 1, m)]
                for j in range(m)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PcPresentation":
        orders = [int(p) for p in data["relative_orders"]]
        m = len(orders)

        def vec(text):
            v = [0] * m
            for i, e in parse_word(text):
                if not 0 <= i < m or not 0 <= e < orders[i]:
                    raise ValueError(f"word {text!r} is not in normal form")
                v[i] = e
            return tuple(v)

        power = [vec(t) for t in data["power"]]
        conj = {}
        for j, row in enumerate(data["conjugate"]):
            for off, t in enumerate(row):
                conj[(j, j + 1 + off)] = vec(t)
        return cls(orders, power, conj)

    def is_consistent(self) -> bool:
        """The standard overlap tests: each pair of bracketings collects to the same vector."""
        m = len(self)
        u = self.unit
        p = self.relative_orders

        def gpow(j, e):
            v = [0] * m
            v[j] = e
            return tuple(v)

        mul = self.mul
        for i in range(m):
            if mul(self.power[i], u(i)) != mul(u(i), self.power[i]):
                return False
            for j in range(i + 1, m):
                if mul(self.power[j], u(i)) != mul(gpow(j, p[j] - 1), mul(u(j), u(i))):
                    return False
                if mul(mul(u(j), gpow(i, p[i] - 1)), u(i)) != mul(u(j), self.power[i]):
                    return False
                for k in range(j + 1, m):
                    if mul(mul(u(k), u(j)), u(i)) != mul(u(k), mul(u(j), u(i))):
                        return False
        return True
