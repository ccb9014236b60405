"""End-to-end tables: Brauer pipeline against the oracle."""

import pytest
from conftest import CORPUS_NAMES, _corpus, brauer_of, header_of, oracle_of

from ctbl.charstore import read_store
from ctbl.classfunction import ClassFunction
from ctbl.pipeline import brauer_table, character_table, check_orthogonality


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_brauer_equals_oracle(name):
    result = brauer_of(name)
    assert result.complete
    assert [c.to_strings() for c in result.irreducibles] == [c.to_strings() for c in oracle_of(name)]


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_orthogonality(name):
    report = check_orthogonality(brauer_of(name).irreducibles, header_of(name))
    assert report.rows and report.columns and report.degrees


def test_orthogonality_detects_errors():
    H = header_of("S3")
    bad = [ClassFunction([1, 1, 1]), ClassFunction([1, -1, 1]), ClassFunction([2, 0, 1])]
    assert not check_orthogonality(bad, H)


def test_store_outputs(tmp_path):
    G = _corpus()["D8"]
    result = brauer_table(G, header_of("D8"), store=tmp_path)
    irr = read_store(tmp_path / "irreducibles.ctbl").characters
    assert [c.values for c in irr] == [c.values for c in result.irreducibles]
    assert len(read_store(tmp_path / "induced.ctbl").characters) == result.induced_count
    assert list(tmp_path.glob("pgroup-*/merged.ctbl"))


def test_unknown_method():
    with pytest.raises(ValueError):
        character_table(_corpus()["S3"], method="magic")


def test_json_shape():
    d = brauer_of("S3").to_json()
    assert d["found"] == d["expected"] == 3
    assert d["complete"] is True
    assert ["1", "1", "1"] in d["irreducibles"]
    assert [row[0] for row in d["irreducibles"]] == ["1", "1", "2"]
