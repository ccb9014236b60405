"""Class functions: one exact cyclotomic value per conjugacy class."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .cyclotomic import Cyclotomic, as_cyclotomic, format_cyclotomic, parse_cyclotomic


class ClassFunction:
    """Values indexed by the classes of a fixed :class:`TableHeader` ordering."""

    __slots__ = ("values", "owner", "_key")

    def __init__(self, values: Iterable, owner: str | None = None):
        self.values: tuple[Cyclotomic, ...] = tuple(as_cyclotomic(v) for v in values)
        self.owner = owner
        self._key = None

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> Cyclotomic:
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    @property
    def degree(self) -> Fraction:
        d = self.values[0].try_rational()
        if d is None:
            raise ValueError("value at the identity is not rational")
        return d

    def key(self) -> tuple[str, ...]:
        if self._key is None:
            self._key = tuple(format_cyclotomic(v) for v in self.values)
        return self._key

    def sort_key(self):
        return (self.degree, self.key())

    def _check(self, other: "ClassFunction"):
        if len(other) != len(self):
            raise ValueError("class functions of different length")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction((a + b for a, b in zip(self.values, other.values)), self.owner)

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction((a - b for a, b in zip(self.values, other.values)), self.owner)

    def __neg__(self) -> "ClassFunction":
        return ClassFunction((-a for a in self.values), self.owner)

    def __mul__(self, scalar) -> "ClassFunction":
        if isinstance(scalar, ClassFunction):
            self._check(scalar)
            return ClassFunction((a * b for a, b in zip(self.values, scalar.values)), self.owner)
        return ClassFunction((a * scalar for a in self.values), self.owner)

    __rmul__ = __mul__

    def conjugate(self) -> "ClassFunction":
        return ClassFunction((a.conjugate() for a in self.values), self.owner)

    def galois(self, k: int) -> "ClassFunction":
        return ClassFunction((a.galois(k) for a in self.values), self.owner)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassFunction) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return "ClassFunction([" + ", ".join(self.key()) + "])"

    def to_strings(self) -> list[str]:
        return list(self.key())

    @classmethod
    def from_strings(cls, strings: Sequence[str], owner: str | None = None) -> "ClassFunction":
        return cls((parse_cyclotomic(s) for s in strings), owner)


def trivial_character(n_classes: int) -> ClassFunction:
    return ClassFunction([1] * n_classes)


def regular_character(n_classes: int, group_order: int) -> ClassFunction:
    return ClassFunction([group_order] + [0] * (n_classes - 1))


def canonical_sort(chars: Iterable[ClassFunction]) -> list[ClassFunction]:
    """Deduplicate and sort by (degree, canonical value strings)."""
    unique = {c.values: c for c in chars}
    return sorted(unique.values(), key=ClassFunction.sort_key)
