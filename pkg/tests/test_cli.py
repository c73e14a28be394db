import json
import subprocess
import sys
from pathlib import Path

import pytest

from condense.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def z3(tmp_path_factory):
    d = tmp_path_factory.mktemp("z3")
    assert main(["generate", "3", str(d)]) == 0
    return d


def test_generate_writes_a_consistent_workspace(z3):
    names = {p.name for p in z3.iterdir()}
    assert names == {"vectz3.fcat", "one.alg", "A.alg", "reg_1A.bim", "reg_A1.bim", "modcat.json", "invertible.cond", "rank.cond"}


def test_generate_for_obstructed_cocycle(tmp_path, capsys):
    code, out, _ = run(capsys, "generate", 2, tmp_path, "--q", 1)
    assert code == 0 and "obstructed" in out
    assert not (tmp_path / "A.alg").exists()


def test_ring_pentagon_components(z3, capsys):
    code, out, _ = run(capsys, "check-ring", z3 / "vectz3.fcat")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "check-pentagon", z3 / "vectz3.fcat")
    assert code == 0 and out.startswith("pentagon: PASS (instances:")
    code, out, _ = run(capsys, "components", DATA / "vect2.fcat")
    assert code == 0 and "component counts: [[1, 0], [0, 1]]" in out and "connected: no" in out


def test_check_algebra_and_bimodule(z3, capsys):
    assert run(capsys, "check-algebra", z3 / "A.alg")[0] == 0
    assert run(capsys, "check-bimodule", z3 / "reg_1A.bim")[0] == 0


def test_broken_algebra_exits_one_with_axiom_names(z3, tmp_path, capsys):
    obj = json.loads((z3 / "A.alg").read_text())
    obj["fcat"] = str(z3 / "vectz3.fcat")
    obj["delta"] = json.loads(json.dumps(obj["delta"]).replace('"1/3"', '"2/3"'))
    (tmp_path / "bad.alg").write_text(json.dumps(obj))
    code, out, _ = run(capsys, "check-algebra", tmp_path / "bad.alg")
    assert code == 1
    assert "failing axioms:" in out and "specialness" in out


def test_rel_tensor_regular_bimodules(z3, tmp_path, capsys):
    code, out, _ = run(capsys, "rel-tensor", z3 / "reg_1A.bim", z3 / "reg_A1.bim", "-o", tmp_path / "rt.bim")
    assert code == 0
    assert "idempotent: p∘p = p" in out
    assert "multiplicities: 1,1,1" in out
    code, out, _ = run(capsys, "check-bimodule", tmp_path / "rt.bim")
    assert code == 0


def test_json_reports_round_trip(z3, tmp_path, capsys):
    code, out, _ = run(capsys, "--json", "rel-tensor", z3 / "reg_1A.bim", z3 / "reg_A1.bim")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] and data["multiplicities"] == [1, 1, 1]
    # the payload is itself a loadable bimodule file (refs are relative to cwd)
    data["fcat"] = str(z3 / "vectz3.fcat")
    (tmp_path / "from_json.bim").write_text(json.dumps(data))
    assert run(capsys, "check-bimodule", tmp_path / "from_json.bim")[0] == 0


def test_split_verb(z3, capsys):
    for cond in ("invertible.cond", "rank.cond"):
        code, out, _ = run(capsys, "split", z3 / cond)
        assert code == 0, out
        assert "splitting extension: PASS" in out


def test_modcat_verbs(z3, capsys):
    code, out, _ = run(capsys, "modcat", "report", z3 / "modcat.json")
    assert code == 0
    assert "simple counts (row = target, column = source): [[3, 1], [1, 3]]" in out
    code, out, _ = run(capsys, "modcat", "connected", z3 / "modcat.json")
    assert code == 0 and "connected: yes" in out
    code, out, _ = run(capsys, "modcat", "generator", z3 / "modcat.json")
    assert code == 0 and "component matrix: [[3, 1], [1, 3]]" in out
    code, out, _ = run(capsys, "modcat", "report", z3 / "modcat.json", "--pair", "1", "A")
    assert code == 0 and out.count("Hom(") == 1


@pytest.mark.parametrize("n,q,count", [(2, 0, 2), (3, 0, 2), (5, 0, 2), (2, 1, 1), (4, 0, 3)])
def test_modcat_classify(capsys, n, q, count):
    code, out, _ = run(capsys, "modcat", "classify", n, q)
    assert code == 0
    assert out.splitlines()[0] == f"Vect_Z/{n} with omega_{q}: {count} class(es)"


def test_classify_usage_error(capsys):
    code, _, err = run(capsys, "modcat", "classify", 5)
    assert code == 2 and err.startswith("error:")


def test_completions_and_equivalence(capsys, tmp_path):
    pres = DATA / "presentations"
    code, out, _ = run(capsys, "kar", pres / "m2.json", "-o", tmp_path / "kar.json")
    assert code == 0 and "dim End = 1" in out
    assert json.loads((tmp_path / "kar.json").read_text())["kind"] == "presentation"
    code, out, _ = run(capsys, "cauchy", pres / "ss_s_only.json")
    assert code == 0
    code, out, _ = run(capsys, "check-equivalence", pres / "m2_into_ss.functor")
    assert code == 0 and "cauchy equivalence: PASS" in out
    code, out, _ = run(capsys, "check-equivalence", pres / "s_into_st.functor")
    assert code == 1 and "cauchy equivalence: FAIL" in out


def test_missing_file_exits_two(capsys, tmp_path):
    code, out, err = run(capsys, "check-ring", tmp_path / "nope.fcat")
    assert code == 2 and out == "" and "no such file" in err


def test_conductor_cap_flag(z3, capsys):
    code, _, err = run(capsys, "--conductor-cap", "1", "check-pentagon", DATA / "fibonacci.fcat")
    assert code == 2 and "cap" in err


def test_unknown_verb_exits_nonzero(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code != 0


def test_reports_are_byte_identical(z3):
    cmd = [sys.executable, "-m", "condense.cli", "modcat", "report", str(z3 / "modcat.json")]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"[[3, 1], [1, 3]]" in a
    cmd = [sys.executable, "-m", "condense.cli", "--json", "rel-tensor", str(z3 / "reg_1A.bim"), str(z3 / "reg_A1.bim")]
    assert subprocess.run(cmd, capture_output=True, cwd=z3).stdout == subprocess.run(cmd, capture_output=True, cwd=z3).stdout


def test_generated_files_are_reproducible(tmp_path):
    for d in ("a", "b"):
        assert main(["generate", "2", str(tmp_path / d)]) == 0
    for f in (tmp_path / "a").iterdir():
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()
