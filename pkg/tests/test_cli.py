import json
import subprocess
import sys
from pathlib import Path

import pytest

from wgraphalg.cli import run
from wgraphalg.coxeter import parse_coxeter
from wgraphalg.decomp import a1_certificate
from wgraphalg.formats import certificate_from_document, certificate_to_document

GOLDEN = Path(__file__).parent / "golden"


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _checks(text):
    return {line.split()[1]: line.split()[2] for line in text.splitlines() if line.startswith("CHECK ")}


def test_coxeter_info(capsys):
    code, out, _ = _run(capsys, "coxeter", "info", "--coxeter", "A2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["order"] == 6 and doc["generators"] == ["s1", "s2"]
    code, out, _ = _run(capsys, "coxeter", "info", "--coxeter", "A2xA1")
    assert "|W| = 12" in out and "components: {s1,s2} {t1}" in out


def test_coxeter_from_file(capsys, tmp_path):
    f = tmp_path / "w.json"
    f.write_text(json.dumps({"generators": ["a", "b"], "matrix": [[1, 4], [4, 1]]}))
    code, out, _ = _run(capsys, "coxeter", "info", "--coxeter", str(f))
    assert code == 0 and "|W| = 8" in out


def test_quiver_dot_matches_golden(capsys):
    code, out, _ = _run(capsys, "quiver", "dot", "--coxeter", "A1xA1")
    assert code == 0 and out == (GOLDEN / "quiver_A1xA1.dot").read_text()


def test_relations_match_golden(capsys, tmp_path):
    target = tmp_path / "rels.txt"
    code, out, _ = _run(capsys, "omega", "relations", "--coxeter", "I2(5)", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == (GOLDEN / "relations_I25.txt").read_text()
    code, out, _ = _run(capsys, "omega", "relations", "--coxeter", "A2", "--source", "braid", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 5


def test_omega_reduce(capsys):
    code, out, _ = _run(capsys, "omega", "reduce", "--coxeter", "A2", "--expr", "X{s1}->{s2}*X{s2}->{s1}")
    assert code == 0 and out == "E{s1}\n"
    code, out, _ = _run(capsys, "omega", "reduce", "--coxeter", "A2", "--format", "json",
                        "--expr", "X{s1,s2}->{}^s1 - X{s1,s2}->{}^s2")
    doc = json.loads(out)
    assert doc["verdict"] == "zero" and doc["normal_form"] == "0"


def test_omega_table(capsys):
    code, out, _ = _run(capsys, "omega", "table", "--coxeter", "A1")
    assert code == 0 and "dimension 3" in out
    assert _checks(out) == {"closure": "PASS", "associative": "PASS"}


def test_closure_failure_is_inconclusive(capsys):
    code, out, _ = _run(capsys, "omega", "table", "--coxeter", "I2(6)", "--max-len", "6")
    assert code == 2 and _checks(out) == {"closure": "INCONCLUSIVE"}
    assert "closure failure at L=6" in out


def test_wgraph_validate(capsys, tmp_path):
    code, out, _ = _run(capsys, "wgraph", "validate", "--coxeter", "B2")
    assert code == 0 and set(_checks(out).values()) == {"PASS"}
    bad = {"coxeter": "A2", "name": "bad", "vertices": ["x", "y"], "labels": {"x": ["s1"], "y": ["s2"]},
           "weights": {"s1": [[0, 2], [0, 0]], "s2": [[0, 0], [2, 0]]}}
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(bad))
    code, out, _ = _run(capsys, "wgraph", "validate", "--graph", str(f))
    assert code == 1 and _checks(out) == {"bad:W-graph": "FAIL"}
    assert "braid s1,s2: FAILED" in out


def test_tensor_commands(capsys):
    code, out, _ = _run(capsys, "tensor", "verify-kernel", "--coxeter", "A1xA1", "--nilpotency")
    assert code == 0 and _checks(out)["nilpotency"] == "PASS"
    code, out, _ = _run(capsys, "tensor", "verify-psi", "--coxeter", "A2xA1")
    assert code == 0 and _checks(out) == {"psi-commutators": "PASS", "beta-two-term": "PASS"}


def test_tensor_needs_a_product(capsys):
    code, _, err = _run(capsys, "tensor", "verify-kernel", "--coxeter", "A2")
    assert code == 3 and "not declared as a product" in err


def test_cert_verify_builtin(capsys):
    code, out, _ = _run(capsys, "cert", "verify", "--coxeter", "A2")
    assert code == 0 and set(_checks(out)) == {"Z1", "Z2", "Z3", "Z4", "Z5", "Z6"}


def test_cert_verify_failure(capsys, tmp_path):
    W = parse_coxeter("A1")
    doc = certificate_to_document(a1_certificate(W))
    doc["order"] = [["triv", "sign"]]
    f = tmp_path / "rev.json"
    f.write_text(json.dumps(doc))
    code, out, _ = _run(capsys, "cert", "verify", "--coxeter", "A1", "--cert", str(f))
    assert code == 1 and _checks(out)["Z3"] == "FAIL"


def test_cert_product(capsys, tmp_path):
    target = tmp_path / "prod.json"
    code, out, _ = _run(capsys, "cert", "product", "--left", "A2", "--right", "A1", "--out", str(target))
    assert code == 0
    assert _checks(out)["left:Z1"] == "PASS"
    cert = certificate_from_document(json.loads(target.read_text()))
    assert len(cert.labels) == 6 and cert.system.rank == 3
    code, out, err = _run(capsys, "cert", "product", "--left", "A1", "--right", "A1")
    assert code == 0 and json.loads(out)["labels"][0] == "sign.sign" and "CHECK" in err


def test_cert_search_round_trip(capsys, tmp_path):
    target = tmp_path / "a2.json"
    code, out, _ = _run(capsys, "cert", "search", "--coxeter", "A2", "--degrees", "triv=1,sign=1,refl=2",
                        "--out", str(target))
    assert code == 0 and _checks(out)["search"] == "PASS"
    code, out, _ = _run(capsys, "cert", "verify", "--coxeter", "A2", "--cert", str(target))
    assert code == 0


def test_cert_search_inconclusive(capsys):
    code, out, _ = _run(capsys, "cert", "search", "--coxeter", "B2", "--max-len", "8",
                        "--degrees", "a=1,b=1,c=1,d=1,r=2")
    assert code == 2 and "no certificate built from vertex idempotents" in out


@pytest.mark.parametrize("argv", [
    ["coxeter", "info"],
    ["coxeter", "info", "--coxeter", "Z9"],
    ["omega", "table", "--coxeter", "A1", "--max-len", "0"],
    ["omega", "reduce", "--coxeter", "A2", "--expr", "E{s1"],
    ["cert", "search", "--coxeter", "A2", "--degrees", "triv=x"],
    ["cert", "verify", "--coxeter", "A2", "--cert", "/nonexistent/cert.json"],
    ["wgraph", "validate"],
    ["nope"],
])
def test_usage_errors_exit_3(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 3 and err


def test_invalid_json_exit_3(capsys, tmp_path):
    f = tmp_path / "broken.json"
    f.write_text("{not json")
    code, _, err = _run(capsys, "wgraph", "validate", "--graph", str(f))
    assert code == 3 and "invalid JSON" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wgraphalg", "coxeter", "info", "--coxeter", "A1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "|W| = 2" in proc.stdout
