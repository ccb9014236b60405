"""Exact arithmetic in cyclotomic fields.

Elements are stored in the Zumbroich basis of Q(E(n)) for their minimal
conductor n, so two elements are equal exactly when their coefficient tuples
are equal. ``E(n)`` is the primitive n-th root of unity exp(2 pi i / n).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=None)
def _digits(n: int) -> tuple[tuple[int, int, int, tuple[int, ...]], ...]:
    """Per prime p^e || n: (p, e, n // p, digit of every exponent k mod n).

    The digit of k is the leading base-p digit of the p-primary CRT component
    of k, i.e. floor((k * m^-1 mod p^e) / p^(e-1)) with m = n / p^e.
    """
    out = []
    for p, e in _factor(n):
        pe = p**e
        m = n // pe
        beta = pow(m, -1, pe) if pe > 1 else 0
        lead = p ** (e - 1)
        digits = tuple(((k * beta) % pe) // lead for k in range(n))
        out.append((p, e, n // p, digits))
    return tuple(out)


@lru_cache(maxsize=None)
def zumbroich_basis(n: int) -> tuple[int, ...]:
    """Exponents k such that E(n)^k belongs to the Zumbroich basis of Q(E(n))."""
    if n % 4 == 2:
        raise ValueError("conductor must not be 2 mod 4")
    ks = []
    data = _digits(n)
    for k in range(n):
        ok = True
        for p, _e, _step, digits in data:
            d = digits[k]
            if (p == 2 and d != 0) or (p != 2 and d == 0):
                ok = False
                break
        if ok:
            ks.append(k)
    return tuple(ks)


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _to_basis(n: int, coeffs: dict[int, Rational]) -> dict[int, Rational]:
    """Rewrite a sum of powers of E(n) in the Zumbroich basis (n != 2 mod 4)."""
    c = dict(coeffs)
    for p, _e, step, digits in _digits(n):
        if p == 2:
            for k in [k for k, v in c.items() if v and digits[k] == 1]:
                v = c.pop(k)
                j = (k + step) % n
                c[j] = c.get(j, 0) - v
        else:
            for k in [k for k, v in c.items() if v and digits[k] == 0]:
                v = c.pop(k)
                for i in range(1, p):
                    j = (k + i * step) % n
                    c[j] = c.get(j, 0) - v
    return {k: _clean(v) for k, v in c.items() if v}


def _halve_conductor(n: int, coeffs: Mapping[int, Rational]) -> tuple[int, dict[int, Rational]]:
    """Map a sum over E(n), n = 2 mod 4, into Q(E(n/2))."""
    m = n // 2
    out: dict[int, Rational] = {}
    for k, v in coeffs.items():
        if k % 2 == 0:
            j = (k // 2) % m
        else:
            j = ((k + m) // 2) % m
            v = -v
        out[j] = out.get(j, 0) + v
    return m, out


def _normalize(n: int, coeffs: Mapping[int, Rational]) -> tuple[int, tuple[tuple[int, Rational], ...]]:
    if n % 4 == 2:
        n, coeffs = _halve_conductor(n, coeffs)
    c = _to_basis(n, coeffs) if n > 1 else {0: _clean(sum(coeffs.values(), 0))}
    c = {k: v for k, v in c.items() if v}
    while n > 1 and c:
        reduced = False
        for p, e, step, _digits_p in _digits(n):
            if e >= 2 or p == 2:
                if all(k % p == 0 for k in c):
                    n //= p
                    c = {k // p: v for k, v in c.items()}
                    reduced = True
                    break
            else:
                # odd p with p || n: each fiber k + j*(n/p) must carry one value
                fibers: dict[int, list] = {}
                for k, v in c.items():
                    fibers.setdefault(k % step, []).append(v)
                if all(len(vs) == p - 1 and all(x == vs[0] for x in vs) for vs in fibers.values()):
                    new = {}
                    for r, vs in fibers.items():
                        k0 = next(r + j * step for j in range(p) if (r + j * step) % p == 0)
                        new[(k0 // p) % step] = -vs[0]
                    n = step
                    c = new
                    reduced = True
                    break
        if not reduced:
            break
        if n % 4 == 2:
            n, c = _halve_conductor(n, c)
        c = _to_basis(n, c) if n > 1 else {0: _clean(sum(c.values(), 0))}
        c = {k: v for k, v in c.items() if v}
    if not c:
        return 1, ()
    if n == 1:
        return 1, ((0, _clean(c[0])),)
    return n, tuple(sorted(c.items()))


class Cyclotomic:
    """An immutable element of a cyclotomic field in canonical form."""

    __slots__ = ("conductor", "terms", "_hash")

    def __init__(self, conductor: int = 1, coefficients: Mapping[int, Rational] | None = None):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        coefficients = coefficients or {}
        n, terms = _normalize(conductor, {k % conductor: v for k, v in coefficients.items()})
        self.conductor = n
        self.terms = terms
        self._hash = hash((n, terms))

    @classmethod
    def _raw(cls, n: int, terms: tuple) -> "Cyclotomic":
        z = object.__new__(cls)
        z.conductor = n
        z.terms = terms
        z._hash = hash((n, terms))
        return z

    @classmethod
    def from_rational(cls, q: Rational) -> "Cyclotomic":
        q = _clean(Fraction(q)) if not isinstance(q, int) else q
        return cls._raw(1, ((0, q),) if q else ())

    @classmethod
    def from_sum(cls, n: int, coefficients: Mapping[int, Rational]) -> "Cyclotomic":
        """Canonical element for sum_k coefficients[k] * E(n)^k (any exponents)."""
        acc: dict[int, Rational] = {}
        for k, v in coefficients.items():
            if v:
                k %= n
                acc[k] = acc.get(k, 0) + v
        return cls(n, acc)

    # -- conversion ---------------------------------------------------

    def coefficients(self) -> dict[int, Rational]:
        return dict(self.terms)

    def embed(self, n: int) -> dict[int, Rational]:
        """Coefficients as a (non-canonical) sum over powers of E(n); conductor must divide n."""
        if n % self.conductor:
            raise ValueError(f"conductor {self.conductor} does not divide {n}")
        s = n // self.conductor
        return {k * s: v for k, v in self.terms}

    def try_rational(self) -> Fraction | None:
        if self.conductor == 1:
            return Fraction(self.terms[0][1]) if self.terms else Fraction(0)
        return None

    def is_rational(self) -> bool:
        return self.conductor == 1

    def is_zero(self) -> bool:
        return not self.terms

    # -- arithmetic ---------------------------------------------------

    def _lift(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.conductor == 1 and other.conductor == 1:
            return Cyclotomic.from_rational(self._rat() + other._rat())
        n = self.conductor * other.conductor // math.gcd(self.conductor, other.conductor)
        acc = self.embed(n)
        for k, v in other.embed(n).items():
            acc[k] = acc.get(k, 0) + v
        return Cyclotomic(n, acc)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic._raw(self.conductor, tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Cyclotomic._raw(self.conductor, tuple((k, _clean(v * other)) for k, v in self.terms))
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.conductor == 1:
            return other * self._rat()
        if other.conductor == 1:
            return self * other._rat()
        n = self.conductor * other.conductor // math.gcd(self.conductor, other.conductor)
        a = self.embed(n)
        b = other.embed(n)
        acc: dict[int, Rational] = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                k = (ka + kb) % n
                acc[k] = acc.get(k, 0) + va * vb
        return Cyclotomic(n, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            q = other.try_rational()
            if q is None:
                return self * other.inverse()
            other = q
        if not other:
            raise ZeroDivisionError("division by zero")
        return self * (1 / Fraction(other))

    def __pow__(self, e: int) -> "Cyclotomic":
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via the product of the other Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self.conductor
        others = ONE
        for k in range(2, n):
            if math.gcd(k, n) == 1:
                others = others * self.galois(k)
        norm = (self * others).try_rational()
        assert norm is not None
        return others / norm

    def _rat(self) -> Rational:
        return self.terms[0][1] if self.terms else 0

    def galois(self, k: int) -> "Cyclotomic":
        """Image under E(n) -> E(n)^k, k coprime to the conductor."""
        n = self.conductor
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit mod {n}")
        if n == 1:
            return self
        return Cyclotomic(n, {(a * k) % n: v for a, v in self.terms})

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    # -- comparison / display ----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            return self.conductor == other.conductor and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.conductor == 1 and self._rat() == other
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def to_string(self) -> str:
        return format_cyclotomic(self)

    def __str__(self) -> str:
        return format_cyclotomic(self)

    def __repr__(self) -> str:
        return f"Cyclotomic({format_cyclotomic(self)!r})"


ZERO = Cyclotomic._raw(1, ())
ONE = Cyclotomic._raw(1, ((0, 1),))


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """E(n)^k."""
    if n < 1:
        raise ValueError("n must be positive")
    return Cyclotomic(n, {k % n: 1})


E = root_of_unity


def try_rational(z: Cyclotomic) -> Fraction | None:
    return z.try_rational()


def as_cyclotomic(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    return Cyclotomic.from_rational(x)


def _fmt_rat(q: Rational) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_cyclotomic(z: Cyclotomic) -> str:
    """Canonical text: ``c1*E(n)^k1 + c2*E(n)^k2 + ...``, or a bare rational."""
    if z.conductor == 1:
        return _fmt_rat(z._rat())
    n = z.conductor
    return " + ".join(f"{_fmt_rat(v)}*E({n})^{k}" for k, v in z.terms)


def parse_cyclotomic(text: str) -> Cyclotomic:
    text = text.strip()
    if "E(" not in text:
        return Cyclotomic.from_rational(Fraction(text))
    acc: dict[int, Rational] = {}
    n = None
    for term in text.split(" + "):
        coef, _, power = term.partition("*E(")
        m_str, _, k_str = power.partition(")^")
        m = int(m_str)
        if n is None:
            n = m
        elif m != n:
            raise ValueError(f"mixed conductors in {text!r}")
        acc[int(k_str)] = _clean(Fraction(coef))
    z = Cyclotomic(n, acc)
    return z
