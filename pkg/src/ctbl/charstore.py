"""Append-only, run-length encoded storage for lists of class functions.

File layout::

    MAGIC
    u32 header length, JSON header {"group", "classes", "ordering"}
    records: one type byte, a varint payload length, the payload

Record types are ``V`` (append one canonical value string to the shared
dictionary) and ``X`` (one character: zigzag degree, run count, then
``count, value_id`` pairs). A file cut off inside its last record is read
up to the last complete record.
"""

from __future__ import annotations

import hashlib
import io
import json
import os
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .classes import TableHeader
from .classfunction import ClassFunction, canonical_sort

MAGIC = b"CTBLRLE1"


class StoreError(ValueError):
    pass


# -- varints -------------------------------------------------------------


def write_varint(n: int) -> bytes:
    if n < 0:
        raise ValueError("varint must be non-negative")
    out = bytearray()
    while True:
        b = n & 0x7F
        n >>= 7
        if n:
            out.append(b | 0x80)
        else:
            out.append(b)
            return bytes(out)


def read_varint(buf: bytes, pos: int) -> tuple[int, int]:
    n = shift = 0
    while True:
        if pos >= len(buf):
            raise StoreError("truncated varint")
        b = buf[pos]
        pos += 1
        n |= (b & 0x7F) << shift
        shift += 7
        if not b & 0x80:
            return n, pos


def _zigzag(n: int) -> int:
    return 2 * n if n >= 0 else -2 * n - 1


def _unzigzag(z: int) -> int:
    return z // 2 if z % 2 == 0 else -(z + 1) // 2


# -- records -------------------------------------------------------------


@dataclass
class RleCharacterRecord:
    degree: int
    runs: list[tuple[int, int]]
    dictionary: list[str]

    @property
    def length(self) -> int:
        return sum(c for c, _ in self.runs)


class ValueDictionary:
    """Canonical value strings and their ids, in order of first use."""

    def __init__(self, values: Iterable[str] = ()):
        self.values: list[str] = []
        self.ids: dict[str, int] = {}
        for v in values:
            self.add(v)

    def add(self, s: str) -> tuple[int, bool]:
        i = self.ids.get(s)
        if i is not None:
            return i, False
        i = len(self.values)
        self.values.append(s)
        self.ids[s] = i
        return i, True

    def __len__(self) -> int:
        return len(self.values)


def encode(chi: ClassFunction, dictionary: ValueDictionary) -> tuple[RleCharacterRecord, list[str]]:
    """Encode chi; returns the record and the strings newly added to the dictionary."""
    new = []
    runs: list[list[int]] = []
    for s in chi.key():
        i, added = dictionary.add(s)
        if added:
            new.append(s)
        if runs and runs[-1][1] == i:
            runs[-1][0] += 1
        else:
            runs.append([1, i])
    d = chi.values[0].try_rational()
    degree = int(d) if d is not None and d.denominator == 1 else 0
    return RleCharacterRecord(degree, [tuple(r) for r in runs], dictionary.values), new


def decode(record: RleCharacterRecord, n_classes: int | None = None) -> ClassFunction:
    if n_classes is not None and record.length != n_classes:
        raise StoreError(f"record covers {record.length} classes, expected {n_classes}")
    strings = []
    for count, vid in record.runs:
        if count < 1 or vid >= len(record.dictionary):
            raise StoreError("malformed run")
        strings.extend([record.dictionary[vid]] * count)
    return ClassFunction.from_strings(strings)


def _record_bytes(record: RleCharacterRecord) -> bytes:
    body = bytearray(write_varint(_zigzag(record.degree)))
    body += write_varint(len(record.runs))
    for count, vid in record.runs:
        body += write_varint(count)
        body += write_varint(vid)
    return b"X" + write_varint(len(body)) + bytes(body)


def _value_bytes(s: str) -> bytes:
    data = s.encode("utf-8")
    return b"V" + write_varint(len(data)) + data


# -- headers -------------------------------------------------------------


def store_header(header: TableHeader) -> dict:
    table = json.dumps(
        {"order": header.group_order, "sizes": header.sizes, "orders": header.orders},
        sort_keys=True,
    )
    return {
        "group": hashlib.sha256(table.encode()).hexdigest()[:16],
        "classes": len(header),
        "ordering": header.fingerprint(),
    }


def _header_bytes(meta: dict) -> bytes:
    data = json.dumps(meta, sort_keys=True).encode("utf-8")
    return MAGIC + struct.pack("<I", len(data)) + data


# -- reading -------------------------------------------------------------


@dataclass
class StoreContents:
    meta: dict
    characters: list[ClassFunction]
    dictionary: list[str]
    complete_bytes: int
    truncated: bool


def read_store(path: str | Path) -> StoreContents:
    buf = Path(path).read_bytes()
    if not buf.startswith(MAGIC) or len(buf) < len(MAGIC) + 4:
        raise StoreError(f"{path}: not a character store")
    pos = len(MAGIC)
    (hlen,) = struct.unpack_from("<I", buf, pos)
    pos += 4
    if pos + hlen > len(buf):
        raise StoreError(f"{path}: truncated header")
    meta = json.loads(buf[pos : pos + hlen].decode("utf-8"))
    pos += hlen
    n = meta["classes"]
    dictionary: list[str] = []
    chars = []
    good = pos
    truncated = False
    while pos < len(buf):
        kind = buf[pos : pos + 1]
        try:
            length, p2 = read_varint(buf, pos + 1)
        except StoreError:
            truncated = True
            break
        if p2 + length > len(buf):
            truncated = True
            break
        payload = buf[p2 : p2 + length]
        if kind == b"V":
            dictionary.append(payload.decode("utf-8"))
        elif kind == b"X":
            q = 0
            z, q = read_varint(payload, q)
            nruns, q = read_varint(payload, q)
            runs = []
            for _ in range(nruns):
                c, q = read_varint(payload, q)
                v, q = read_varint(payload, q)
                runs.append((c, v))
            if q != len(payload):
                raise StoreError("record length mismatch")
            chars.append(decode(RleCharacterRecord(_unzigzag(z), runs, dictionary), n))
        else:
            raise StoreError(f"unknown record type {kind!r}")
        pos = p2 + length
        good = pos
    return StoreContents(meta, chars, dictionary, good, truncated)


def iter_characters(path: str | Path) -> Iterator[ClassFunction]:
    yield from read_store(path).characters


# -- writing -------------------------------------------------------------


class StoreWriter:
    """Single writer for one store file; reopening appends after the last complete record."""

    def __init__(self, path: str | Path, header: TableHeader | dict):
        self.path = Path(path)
        self.meta = store_header(header) if isinstance(header, TableHeader) else dict(header)
        self.n_classes = self.meta["classes"]
        self.dictionary = ValueDictionary()
        if self.path.exists() and self.path.stat().st_size > 0:
            contents = read_store(self.path)
            if contents.meta != self.meta:
                raise StoreError(f"{self.path}: header mismatch")
            self.dictionary = ValueDictionary(contents.dictionary)
            if contents.truncated:
                with open(self.path, "r+b") as fh:
                    fh.truncate(contents.complete_bytes)
            self._fh = open(self.path, "ab")
        else:
            self._fh = open(self.path, "wb")
            self._fh.write(_header_bytes(self.meta))

    def append(self, chi: ClassFunction) -> None:
        if len(chi) != self.n_classes:
            raise StoreError(f"character has {len(chi)} values, expected {self.n_classes}")
        record, new = encode(chi, self.dictionary)
        out = io.BytesIO()
        for s in new:
            out.write(_value_bytes(s))
        out.write(_record_bytes(record))
        self._fh.write(out.getvalue())

    def extend(self, chars: Iterable[ClassFunction]) -> None:
        for chi in chars:
            self.append(chi)

    def close(self) -> None:
        self._fh.flush()
        os.fsync(self._fh.fileno())
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def write_store(path: str | Path, header: TableHeader | dict, chars: Iterable[ClassFunction]) -> Path:
    path = Path(path)
    if path.exists():
        path.unlink()
    with StoreWriter(path, header) as w:
        w.extend(chars)
    return path


def merge(segments: Sequence[str | Path], out: str | Path) -> Path:
    """Deduplicate and canonically sort the characters of all segments into ``out``."""
    if not segments:
        raise StoreError("nothing to merge")
    meta = None
    chars = []
    for seg in segments:
        contents = read_store(seg)
        if meta is None:
            meta = contents.meta
        elif contents.meta != meta:
            raise StoreError(f"{seg}: header does not match {segments[0]}")
        chars.extend(contents.characters)
    return write_store(out, meta, canonical_sort(chars))


def to_text(chars: Iterable[ClassFunction]) -> str:
    """One character per line, canonical value strings separated by commas."""
    return "".join(",".join(c.key()) + "\n" for c in chars)


def export_text(path: str | Path, out: str | Path) -> None:
    Path(out).write_text(to_text(read_store(path).characters), encoding="utf-8")


def encoded_size(chars: Sequence[ClassFunction]) -> int:
    """Bytes of dictionary and character records for ``chars``."""
    d = ValueDictionary()
    size = 0
    for chi in chars:
        record, new = encode(chi, d)
        size += sum(len(_value_bytes(s)) for s in new) + len(_record_bytes(record))
    return size


def compression_ratio(chars: Sequence[ClassFunction]) -> float:
    """Plain text length over encoded length."""
    chars = list(chars)
    return len(to_text(chars).encode("utf-8")) / max(1, encoded_size(chars))

