"""Words in named generators, serialized as ``"g3^2*g5"`` (``"1"`` is the empty word).

Internally a word is a list of ``(index, exponent)`` pairs with 0-based
indices; the text form numbers generators from 1.
"""

from __future__ import annotations

import re

Word = list[tuple[int, int]]

_LETTER = re.compile(r"^([a-z]+)(\d+)(?:\^(-?\d+))?$")


def format_word(word: Word, prefix: str = "g") -> str:
    parts = []
    for i, e in word:
        if e == 0:
            continue
        parts.append(f"{prefix}{i + 1}" if e == 1 else f"{prefix}{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def parse_word(text: str, prefix: str = "g") -> Word:
    text = text.replace(" ", "")
    if text in ("", "1"):
        return []
    word = []
    for part in text.split("*"):
        m = _LETTER.match(part)
        if not m or m.group(1) != prefix:
            raise ValueError(f"bad word letter {part!r} in {text!r}")
        word.append((int(m.group(2)) - 1, int(m.group(3) or 1)))
    return word


def letters(word: Word) -> list[tuple[int, int]]:
    """Expand to single letters (index, +1 or -1)."""
    out = []
    for i, e in word:
        s = 1 if e > 0 else -1
        out.extend([(i, s)] * abs(e))
    return out


def invert(word: Word) -> Word:
    return [(i, -e) for i, e in reversed(word)]


def compress(seq: list[tuple[int, int]]) -> Word:
    """Merge adjacent powers of the same generator, dropping cancellations."""
    out: Word = []
    for i, e in seq:
        if out and out[-1][0] == i:
            e += out[-1][1]
            out.pop()
        if e:
            out.append((i, e))
    return out


def vector_word(vec) -> Word:
    return [(i, e) for i, e in enumerate(vec) if e]
