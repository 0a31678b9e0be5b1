from __future__ import annotations

import json

import pytest

from gradecert.cli import main, run_corpus
from gradecert.corpus import CORPUS_SPECS
from gradecert.specio import algebra_from_spec, algebra_to_spec, dumps

A2_TRIVIAL = [s for s in CORPUS_SPECS if s["name"] == "path-A2-trivial"][0]
X3 = [s for s in CORPUS_SPECS if s["name"] == "truncated-x3"][0]
SEMISIMPLE = {"name": "kxk", "field": "Q", "dim": 2, "labels": ["e1", "e2"], "grades": [0, 0],
              "mult": [[0, 0, 0, "1"], [1, 1, 1, "1"]], "unit": ["1", "1"]}


def order(c):
    mult = [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]] + ([[1, 1, 0, c]] if c else [])
    return {"field": "Z", "prime": 5, "dim": 2, "labels": ["1", "x"], "mult": mult, "unit": [1, 0]}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_certify_trivial_grading_passes(tmp_path, capsys):
    code, out, _ = run(capsys, "certify", write(tmp_path, "a.json", A2_TRIVIAL), "--checks", "standard_q_koszul")
    assert code == 0
    assert json.loads(out)["reports"][0]["verdict"] == "pass"


def test_certify_x3_koszul_fails_with_witness(tmp_path, capsys):
    code, out, _ = run(capsys, "certify", write(tmp_path, "x3.json", X3), "--checks", "koszul")
    assert code == 1
    rep = json.loads(out)["reports"][0]
    assert rep["witness"]["degree"] == 2 and rep["witness"]["shift"] == 3


def test_certify_inconclusive_exit_two(tmp_path, capsys):
    ext2 = [s for s in CORPUS_SPECS if s["name"] == "exterior-2"][0]
    code, out, _ = run(capsys, "certify", write(tmp_path, "e.json", ext2), "--checks", "koszul")
    assert code == 2
    assert json.loads(out)["reports"][0]["verdict"] == "inconclusive(truncated)"


def test_certify_malformed_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{ nope")
    code, _, err = run(capsys, "certify", str(path))
    assert code == 3
    assert "line 1" in err


def test_certify_missing_file(tmp_path, capsys):
    assert run(capsys, "certify", str(tmp_path / "missing.json"))[0] == 3


def test_certify_poset_and_out(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "certify", write(tmp_path, "a.json", A2_TRIVIAL), "--poset", "2<1",
                     "--checks", "quasi_hereditary,q_koszul:2", "--out", str(out))
    assert code == 0
    props = [r["property"] for r in json.loads(out.read_text())["reports"]]
    assert props == ["quasi_hereditary", "q_koszul(2)"]


def test_certify_bad_poset(tmp_path, capsys):
    assert run(capsys, "certify", write(tmp_path, "a.json", A2_TRIVIAL), "--poset", "1<9")[0] == 3


def test_gr_tildegr_examples(tmp_path, capsys):
    code, out, _ = run(capsys, "gr", write(tmp_path, "o.json", order(0)), "--mode", "tildegr")
    assert code == 0
    doc = json.loads(out)
    assert doc["field"] == "Fp:5" and doc["grades"] == [0, 1]
    code, out, _ = run(capsys, "gr", write(tmp_path, "o5.json", order(5)), "--mode", "tildegr")
    assert json.loads(out)["grades"] == [0, 0]


def test_gr_semisimple_identity(tmp_path, capsys):
    code, out, _ = run(capsys, "gr", write(tmp_path, "s.json", SEMISIMPLE))
    assert code == 0
    doc = json.loads(out)
    assert doc["grades"] == [0, 0]
    assert algebra_to_spec(algebra_from_spec(doc)) == doc
    assert doc["mult"] == SEMISIMPLE["mult"]


def test_gr_output_revalidates_and_certifies(tmp_path, capsys):
    x3_flat = dict(X3, grading="trivial")
    out = tmp_path / "g.json"
    assert run(capsys, "gr", write(tmp_path, "x.json", x3_flat), "--out", str(out))[0] == 0
    a = algebra_from_spec(json.loads(out.read_text()))
    assert sorted(a.grades) == [0, 1, 2]
    assert run(capsys, "certify", str(out), "--checks", "koszul")[0] == 1


def test_gr_mode_mismatch(tmp_path, capsys):
    assert run(capsys, "gr", write(tmp_path, "a.json", SEMISIMPLE), "--mode", "tildegr")[0] == 3
    assert run(capsys, "gr", write(tmp_path, "o.json", order(0)), "--mode", "gr")[0] == 3


def test_gr_radical_unavailable_explained(tmp_path, capsys):
    doc = dict(SEMISIMPLE, field="Fp:2")
    code, _, err = run(capsys, "gr", write(tmp_path, "f2.json", doc))
    assert code == 3
    assert "radical" in err


def test_coxeter_dcosets(capsys):
    code, out, _ = run(capsys, "coxeter", "dcosets", "A2", "--J1", "s1", "--J2", "s2")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 3
    assert [line.split(",")[2] for line in lines[1:]].count("true") == 1


def test_coxeter_psi(capsys):
    assert run(capsys, "coxeter", "psi", "A2", "--mu", "s1", "--nu", "s2", "--x", "s2.s1")[1] == "e\n"


def test_coxeter_weights(capsys):
    assert run(capsys, "coxeter", "weights", "A1", "--p", "5", "--jantzen", "24")[1] == "true\n"
    assert run(capsys, "coxeter", "weights", "A1", "--p", "5", "--jantzen", "25")[1] == "false\n"


def test_coxeter_radius_hint(capsys):
    code, _, err = run(capsys, "coxeter", "dcosets", "A2", "--J1", "s1,s2", "--J2", "s1", "--radius", "3")
    assert code == 3 and "radius >= 4" in err


def test_coxeter_kl_csv(capsys):
    code, out, _ = run(capsys, "coxeter", "kl", "A2")
    lines = out.strip().splitlines()
    assert lines[0] == "x,w,coefficients"
    assert all(line.endswith(",1") for line in lines[1:])
    assert len(lines) == 20


def test_bad_subcommand_exit_three():
    with pytest.raises(SystemExit) as err:
        main(["nope"])
    assert err.value.code == 3


def test_corpus_runner_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run_corpus(a, seed=0)
    run_corpus(b, seed=0)
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    assert len(names) == len(CORPUS_SPECS) + 1
    for n in names:
        assert (a / n).read_bytes() == (b / n).read_bytes()


def test_figures_written_and_reproducible(tmp_path, capsys):
    path = write(tmp_path, "a.json", A2_TRIVIAL)
    docs = []
    for k in (1, 2):
        figs = tmp_path / f"figs{k}"
        code, out, _ = run(capsys, "--seed", "0", "certify", path, "--checks", "standard_q_koszul",
                           "--figures", str(figs))
        assert code == 0
        docs.append(out)
    assert docs[0] == docs[1]
    names = json.loads(docs[0])["figures"]
    assert names == ["a-standard_q_koszul.svg", "a-poset.svg"]
    for n in names:
        assert (tmp_path / "figs1" / n).read_bytes() == (tmp_path / "figs2" / n).read_bytes()


def test_canonical_dump_stable(tmp_path, capsys):
    path = write(tmp_path, "a.json", A2_TRIVIAL)
    run(capsys, "gr", path, "--out", str(tmp_path / "g1.json"))
    run(capsys, "gr", path, "--out", str(tmp_path / "g2.json"))
    text = (tmp_path / "g1.json").read_text()
    assert text == (tmp_path / "g2.json").read_text()
    assert text == dumps(json.loads(text))
