"""The ``ctbl`` command line."""

import json
import subprocess
import sys

import pytest
from conftest import _corpus

from ctbl import cli, pipeline
from ctbl.cyclotomic import parse_cyclotomic
from ctbl.cyclotomic import root_of_unity as E
from ctbl.groups import abelian, group_to_json


def write_group(tmp_path, name, G=None):
    G = G or _corpus()[name]
    path = tmp_path / (name.replace("^", "").replace(":", "_").replace("(", "").replace(")", "").replace(",", "") + ".json")
    path.write_text(json.dumps(group_to_json(G)))
    return path


def run(args, capsys):
    code = cli.main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def degrees(table):
    return sorted(int(row[0]) for row in table["irreducibles"])


def test_header(tmp_path, capsys):
    code, out, _ = run(["header", write_group(tmp_path, "S3")], capsys)
    assert code == 0 and len(json.loads(out)["classes"]) == 3
    code, out, _ = run(["header", write_group(tmp_path, "S4")], capsys)
    assert sorted(c["centralizer_order"] for c in json.loads(out)["classes"]) == [3, 4, 4, 8, 24]
    code, out, _ = run(["header", write_group(tmp_path, "A5")], capsys)
    assert sum(1 for c in json.loads(out)["classes"] if c["order"] == 5) == 2


def test_irr_examples(tmp_path, capsys):
    code, out, err = run(["irr", write_group(tmp_path, "S4")], capsys)
    assert code == 0 and degrees(json.loads(out)) == [1, 1, 2, 3, 3]
    assert "found 5 of 5" in err
    code, out, _ = run(["irr", write_group(tmp_path, "C6")], capsys)
    table = json.loads(out)
    assert degrees(table) == [1] * 6
    assert {parse_cyclotomic(v).conductor for row in table["irreducibles"] for v in row} <= {1, 3, 6}
    assert any(parse_cyclotomic(v).conductor == 3 for row in table["irreducibles"] for v in row)
    code, out, _ = run(["irr", write_group(tmp_path, "A5")], capsys)
    table = json.loads(out)
    assert degrees(table) == [1, 3, 3, 4, 5]
    values = {parse_cyclotomic(v) for row in table["irreducibles"] for v in row}
    assert -(E(5) + E(5, 4)) in values


@pytest.mark.parametrize("name", ["S4", "SL(2,3)", "A5"])
def test_brauer_matches_oracle_method(tmp_path, capsys, name):
    g = write_group(tmp_path, name)
    _, a, _ = run(["irr", g, "--method", "brauer"], capsys)
    _, b, _ = run(["irr", g, "--method", "oracle"], capsys)
    a, b = json.loads(a), json.loads(b)
    assert a["irreducibles"] == b["irreducibles"] and a["header"] == b["header"]


def test_jobs_byte_identical(tmp_path, capsys):
    g = write_group(tmp_path, "SL(2,3)")
    run(["irr", g, "--jobs", "1", "-o", tmp_path / "one.json"], capsys)
    run(["irr", g, "--jobs", "4", "-o", tmp_path / "four.json"], capsys)
    assert (tmp_path / "one.json").read_bytes() == (tmp_path / "four.json").read_bytes()


def test_store_dir_from_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CTBL_STORE_DIR", str(tmp_path / "store"))
    code, _, _ = run(["irr", write_group(tmp_path, "D8")], capsys)
    assert code == 0
    assert (tmp_path / "store" / "irreducibles.ctbl").exists()


def test_incomplete_exit_code(tmp_path, capsys, monkeypatch):
    real = pipeline.extract_irreducibles

    def lossy(chars, header):
        irr, rem = real(chars, header)
        return irr[:-1], rem

    monkeypatch.setattr(pipeline, "extract_irreducibles", lossy)
    code, out, err = run(["irr", write_group(tmp_path, "S4")], capsys)
    assert code == 2
    table = json.loads(out)
    assert table["found"] == 4 and table["expected"] == 5 and not table["complete"]


def test_bad_input_exit_code(tmp_path, capsys):
    missing = tmp_path / "missing.json"
    code, _, err = run(["header", missing], capsys)
    assert code == 1 and "error" in err
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"degree": 3, "generators": [[0, 0, 1]]}))
    code, _, _ = run(["irr", bad], capsys)
    assert code == 1


def test_hybrid_and_verify(tmp_path, capsys):
    g = write_group(tmp_path, "S4")
    pres = tmp_path / "pres.json"
    code, _, _ = run(["hybrid", g, "--seed", "(0 1)(2 3)", "-o", pres], capsys)
    assert code == 0
    code, _, err = run(["verify", pres, g, "--seed", "(0 1)(2 3)"], capsys)
    assert code == 0 and "verified" in err


def test_verify_tampered_tail(tmp_path, capsys):
    g = write_group(tmp_path, "2^4:A5")
    pres = tmp_path / "pres.json"
    assert run(["hybrid", g, "-o", pres], capsys)[0] == 0
    rec = json.loads(pres.read_text())
    rec["tails"][0] = "1" if rec["tails"][0] != "1" else "g1"
    pres.write_text(json.dumps(rec))
    code, _, _ = run(["verify", pres, g], capsys)
    assert code == 1


def test_verify_with_image_file(tmp_path, capsys):
    from ctbl.hybrid import build_from_perm_group
    from ctbl.perm import Permutation

    G = _corpus()["S4"]
    g = write_group(tmp_path, "S4")
    pres = tmp_path / "pres.json"
    run(["hybrid", g, "--seed", "[1,0,3,2]", "-o", pres], capsys)
    H = build_from_perm_group(G, Permutation([1, 0, 3, 2]))
    images = [list(H.to_permutation(x).images) for x in H.generators()]
    img = tmp_path / "images.json"
    img.write_text(json.dumps(images))
    assert run(["verify", pres, g, "--images", img], capsys)[0] == 0
    images[0] = list(range(4))
    img.write_text(json.dumps(images))
    assert run(["verify", pres, g, "--images", img], capsys)[0] == 1


def test_abelian_input_is_pc_only(tmp_path, capsys):
    g = write_group(tmp_path, "C2xC2", abelian(2, 2))
    code, out, _ = run(["hybrid", g], capsys)
    rec = json.loads(out)
    assert code == 0
    assert rec["quotient_relators"] == [] and rec["tails"] == [] and rec["action"] == []
    assert rec["pc_relators"]["relative_orders"] == [2, 2]


def test_module_entry_point(tmp_path):
    g = write_group(tmp_path, "S3")
    proc = subprocess.run([sys.executable, "-m", "ctbl", "header", str(g)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert len(json.loads(proc.stdout)["classes"]) == 3
