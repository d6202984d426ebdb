from __future__ import annotations

import json
import subprocess
import sys

import pytest

from dmlab import corpus
from dmlab.algebra import from_document
from dmlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def cert(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for name, args in [("S3o2", ["oplus", "2"]), ("S3o3", ["oplus", "3"]), ("A3", ["ap", "3"]),
                       ("C4", ["named", "C4"]), ("S3", ["sugihara", "3"]), ("RS3", ["named", "RS3"])]:
        code, out, _ = run(capsys, "construct", *args)
        assert code == 0
        p = tmp_path / f"{name}.json"
        p.write_text(out)
        paths[name] = str(p)
    return paths


class TestExamples:
    def test_classify_c4(self, capsys, files):
        code, c, _ = cert(capsys, "classify", files["C4"])
        assert code == 0
        flags = c["witnesses"]["flags"]
        assert flags["simple"] and flags["antiIdempotent"] and flags["negativelyGenerated"]
        assert not flags["idempotent"]

    def test_negcone_a3(self, capsys, files):
        code, c, err = cert(capsys, "check", "--suite", "negcone", files["A3"])
        assert code == 1 and c["verdict"] is False
        assert c["witnesses"]["counterexample"]["x"]["label"] == "2"
        assert "x = 2" in err

    def test_epic(self, capsys, files):
        code, c, _ = cert(capsys, "epic", "--ambient", files["S3o2"], "--sub", "-1,0,1", "--gens", files["S3o2"])
        assert code == 0 and c["verdict"] is True

    def test_not_epic(self, capsys, files):
        code, c, _ = cert(capsys, "epic", "--ambient", files["S3o2"], "--sub", "-1,0,1",
                          "--gens", f"{files['S3o2']},{files['S3o3']}")
        assert code == 1
        w = c["witnesses"]
        assert w["element"]["label"] == "c"
        assert w["g"]["map"] != w["h"]["map"]


class TestSubcommands:
    def test_validate(self, capsys, files):
        code, c, _ = cert(capsys, "validate", files["S3"])
        assert code == 0 and c["witnesses"]["size"] == 3

    def test_validate_axiom_failure(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps({"size": 2, "le": [[1, 1], [0, 1]], "fusion": [[0, 0], [0, 0]], "e": 1}))
        code, c, _ = cert(capsys, "validate", str(p))
        assert code == 1 and c["witnesses"]["error"] == "NotAMonoid"

    def test_malformed(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{")
        code, out, err = run(capsys, "validate", str(p))
        assert code == 2 and out == "" and "MalformedInput" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "classify", "/nonexistent.json")
        assert code == 2 and "cannot read" in err

    def test_usage(self, capsys):
        assert run(capsys)[0] == 2
        assert run(capsys, "bogus")[0] == 2
        assert run(capsys, "construct", "nothing", "1")[0] == 2
        assert run(capsys, "construct", "sugihara", "x")[0] == 2

    def test_construct_emits_valid_documents(self, capsys, tmp_path):
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps({"base": "corpus:S3", "sizes": {"1": 2}}))
        for args in (["sugihara", "4"], ["oplus", "2"], ["ap", "2"], ["ap+", "2"], ["named", "D4"],
                     ["otimes", str(spec)], ["reflect", "corpus:RS3"], ["rext", "corpus:S3", "corpus:C4"]):
            code, out, _ = run(capsys, "construct", *args)
            assert code == 0
            A = from_document(json.loads(out))
            assert A.size > 0
        code, out, _ = run(capsys, "construct", "otimes", str(spec))
        assert from_document(json.loads(out)).same_tables(corpus.get("S3o2"))

    def test_bare_output(self, capsys):
        code, out, _ = run(capsys, "construct", "--bare", "sugihara", "3")
        assert "labels" not in json.loads(out)

    def test_homs(self, capsys, files):
        code, c, _ = cert(capsys, "homs", files["S3o2"], files["S3"])
        assert code == 0 and c["witnesses"]["count"] == 1

    def test_separate(self, capsys, files):
        code, c, _ = cert(capsys, "separate", "--ambient", files["S3o2"], "--sub", "-1,0,1", "--element", "c")
        assert code == 0 and c["witnesses"]["case"] == "fresh"
        code, c, _ = cert(capsys, "separate", "--ambient", files["RS3"], "--sub", "e", "--element", "a", "--gsm")
        assert code == 0 and c["witnesses"]["h"]["map"] == [0, 2, 2]

    def test_separate_element_in_b(self, capsys, files):
        code, _, err = run(capsys, "separate", "--ambient", files["S3o2"], "--sub", "-1,0,1", "--element", "0")
        assert code == 2 and "ElementInB" in err

    def test_decompose(self, capsys):
        code, c, _ = cert(capsys, "--corpus", "decompose", "--mode", "otimes", "S3o2")
        assert code == 0 and c["witnesses"]["block_sizes"] == [1, 1, 2]
        code, c, _ = cert(capsys, "--corpus", "decompose", "--mode", "dmm", "S3[C4]")
        assert code == 0 and c["witnesses"]["other_classes_singletons"]
        code, c, _ = cert(capsys, "--corpus", "decompose", "--mode", "reflect", "R2+")
        assert code == 0
        code, c, _ = cert(capsys, "--corpus", "decompose", "--mode", "reflect", "S4")
        assert code == 1
        assert run(capsys, "--corpus", "decompose", "--mode", "dmm", "S5")[0] == 2

    def test_check_suites(self, capsys):
        code, c, _ = cert(capsys, "--corpus", "check", "--suite", "bounds", "S3o2")
        assert code == 0 and c["witnesses"]["slack"] == 0
        code, c, _ = cert(capsys, "--corpus", "check", "--suite", "bounds", "--generators", "1,2", "S5")
        assert code == 0 and c["witnesses"]["bound"] == 5
        code, c, _ = cert(capsys, "--corpus", "check", "--suite", "structure", "A3")
        assert code == 1 and c["witnesses"]["agree"]
        code, c, _ = cert(capsys, "--corpus", "check", "--suite", "structure", "S4")
        assert code == 0
        assert run(capsys, "--corpus", "check", "--suite", "negcone", "RS3")[0] == 2

    def test_check_equations(self, capsys):
        code, c, _ = cert(capsys, "--corpus", "check", "--named", "sigma-sm", "S4")
        assert code == 0
        code, c, _ = cert(capsys, "--corpus", "check", "--equation", "x /\\ y = x", "S3")
        assert code == 1 and c["witnesses"]["counterexample"]["x"]["label"] == "0"
        assert run(capsys, "--corpus", "check", "--equation", "x = (", "S3")[0] == 2

    def test_subalg(self, capsys):
        code, c, _ = cert(capsys, "--corpus", "subalg", "A3")
        assert code == 0 and sorted(c["witnesses"]["universe"]) == ["0", "1", "16", "8"]
        from_document(c["witnesses"]["algebra"])


class TestCertificates:
    def test_shape_and_determinism(self, capsys, files):
        argv = ["epic", "--ambient", files["S3o2"], "--sub", "-1,0,1", "--gens", f"{files['S3o2']},{files['S3o3']}"]
        _, out1, _ = run(capsys, *argv)
        _, out2, _ = run(capsys, *argv)
        assert out1 == out2
        c = json.loads(out1)
        assert set(c) == {"command", "inputs", "verdict", "witnesses", "version"}
        assert set(c["inputs"]) == {files["S3o2"], files["S3o3"]}
        assert all(len(h) == 64 for h in c["inputs"].values())
        from_document(c["witnesses"]["target"])

    def test_warns_outside_variety(self, capsys, files):
        code, _, err = run(capsys, "epic", "--ambient", files["S3o3"], "--sub", "-1,0,1", "--gens", files["S3o2"])
        assert "warning" in err

    def test_console_entry(self, files):
        proc = subprocess.run([sys.executable, "-m", "dmlab.cli", "classify", files["C4"]],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["verdict"] is True
