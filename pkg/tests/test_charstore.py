"""Run-length encoded character stores."""

import random
from fractions import Fraction

import pytest
from conftest import _corpus, header_of

from ctbl.charstore import (
    MAGIC,
    StoreError,
    StoreWriter,
    ValueDictionary,
    compression_ratio,
    decode,
    encode,
    export_text,
    merge,
    read_store,
    store_header,
    to_text,
    write_store,
)
from ctbl.classfunction import ClassFunction, canonical_sort
from ctbl.cyclotomic import Cyclotomic
from ctbl.pgroup import irreducible_characters

ROUND_TRIPS = 10_000


def random_value(rng):
    n = rng.choice([1, 3, 4, 5, 8, 12, 15, 24])
    coeffs = {rng.randrange(n): Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3])) for _ in range(rng.randint(0, 3))}
    return Cyclotomic.from_sum(n, coeffs)


def random_function(rng, k, alphabet=None):
    if alphabet:
        return ClassFunction([rng.choice(alphabet) for _ in range(k)])
    return ClassFunction([random_value(rng) for _ in range(k)])


def test_round_trip_random():
    rng = random.Random(1234)
    d = ValueDictionary()
    alphabet = [random_value(rng) for _ in range(6)]
    for i in range(ROUND_TRIPS):
        k = rng.randint(1, 30)
        chi = random_function(rng, k, alphabet if i % 2 else None)
        record, _ = encode(chi, d)
        assert record.length == k
        assert all(a[1] != b[1] for a, b in zip(record.runs, record.runs[1:]))
        assert decode(record, k).values == chi.values


def test_constant_character_is_one_run():
    record, _ = encode(ClassFunction([3] * 17), ValueDictionary())
    assert record.runs == [(17, 0)]
    assert record.degree == 3


def test_distinct_neighbours():
    chi = ClassFunction(list(range(1, 9)))
    record, _ = encode(chi, ValueDictionary())
    assert [c for c, _ in record.runs] == [1] * 8


def test_decode_rejects_bad_count():
    record, _ = encode(ClassFunction([1, 1, 2]), ValueDictionary())
    with pytest.raises(StoreError):
        decode(record, 4)


@pytest.fixture
def d8():
    return header_of("D8"), irreducible_characters(_corpus()["D8"], header_of("D8"))


def test_file_round_trip(tmp_path, d8):
    header, chars = d8
    path = write_store(tmp_path / "a.ctbl", header, chars)
    assert path.read_bytes().startswith(MAGIC)
    got = read_store(path)
    assert not got.truncated
    assert got.meta == store_header(header)
    assert [c.values for c in got.characters] == [c.values for c in chars]


def test_merge_single_segment_sorts(tmp_path, d8):
    header, chars = d8
    a = write_store(tmp_path / "a.ctbl", header, list(reversed(chars)))
    out = merge([a], tmp_path / "m.ctbl")
    assert [c.values for c in read_store(out).characters] == [c.values for c in canonical_sort(chars)]


def test_merge_idempotent_and_order_independent(tmp_path, d8):
    header, chars = d8
    a = write_store(tmp_path / "a.ctbl", header, chars[:3])
    b = write_store(tmp_path / "b.ctbl", header, chars[2:])
    ab = merge([a, b], tmp_path / "ab.ctbl")
    ba = merge([b, a], tmp_path / "ba.ctbl")
    assert ab.read_bytes() == ba.read_bytes()
    again = merge([ab, ab], tmp_path / "abab.ctbl")
    assert again.read_bytes() == ab.read_bytes()
    assert len(read_store(ab).characters) == len(chars)


def test_merge_header_mismatch(tmp_path, d8):
    header, chars = d8
    a = write_store(tmp_path / "a.ctbl", header, chars)
    b = write_store(tmp_path / "b.ctbl", header_of("Q8"), irreducible_characters(_corpus()["Q8"]))
    with pytest.raises(StoreError):
        merge([a, b], tmp_path / "m.ctbl")


def test_worker_segments_match_single_run(tmp_path):
    G = _corpus()["D8"]
    H = header_of("D8")
    one = irreducible_characters(G, H, jobs=1, store_dir=tmp_path / "one")
    four = irreducible_characters(G, H, jobs=4, store_dir=tmp_path / "four")
    assert [c.values for c in one] == [c.values for c in four]
    assert (tmp_path / "one" / "merged.ctbl").read_bytes() == (tmp_path / "four" / "merged.ctbl").read_bytes()


def test_truncated_tail_recovered(tmp_path, d8):
    header, chars = d8
    path = write_store(tmp_path / "a.ctbl", header, chars)
    full = path.read_bytes()
    complete = read_store(path).complete_bytes
    for cut in range(1, 6):
        path.write_bytes(full[: complete - cut])
        got = read_store(path)
        assert got.truncated
        assert [c.values for c in got.characters] == [c.values for c in chars[: len(got.characters)]]
        assert len(got.characters) < len(chars)
    # a writer reopening the damaged file appends after the last complete record
    path.write_bytes(full[: complete - 2])
    keep = len(read_store(path).characters)
    with StoreWriter(path, header) as w:
        w.extend(chars[keep:])
    got = read_store(path)
    assert not got.truncated
    assert [c.values for c in got.characters] == [c.values for c in chars]


def test_writer_rejects_wrong_header(tmp_path, d8):
    header, chars = d8
    path = write_store(tmp_path / "a.ctbl", header, chars)
    with pytest.raises(StoreError):
        StoreWriter(path, header_of("Q8"))


def test_not_a_store(tmp_path):
    p = tmp_path / "x.ctbl"
    p.write_bytes(b"hello world")
    with pytest.raises(StoreError):
        read_store(p)


def test_text_export(tmp_path, d8):
    header, chars = d8
    path = write_store(tmp_path / "a.ctbl", header, chars)
    export_text(path, tmp_path / "a.txt")
    lines = (tmp_path / "a.txt").read_text().splitlines()
    assert len(lines) == len(chars)
    assert [ClassFunction.from_strings(line.split(",")).values for line in lines] == [c.values for c in chars]


def test_compression_ratio_constant_input():
    chars = [ClassFunction([1] * 50)] * 10
    assert compression_ratio(chars) > 10
    assert to_text(chars).count("\n") == 10
