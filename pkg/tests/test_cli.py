import json
import subprocess
import sys

import pytest

from parafusion import affine, cli
from parafusion import parafermion as pf
from parafusion.errors import ConsistencyError


def invoke(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_json(capsys):
    code, out, _ = invoke(capsys, "classify", "--type", "A", "--rank", "1", "--level", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 3
    assert set(data) == {"type", "rank", "level", "count", "labels", "qdims", "glob"}
    assert data["labels"][2] == {"Lambda": [1], "coset": [0]}
    assert data["qdims"] == [1.0, 1.0, 1.414213562373]
    assert data["glob"] == 4.0


def test_classify_is_deterministic(capsys):
    argv = ("classify", "--type", "B", "--rank", "2", "--level", "2", "--format", "json")
    assert invoke(capsys, *argv)[1] == invoke(capsys, *argv)[1]


def test_qdim_default_precision(capsys):
    code, out, _ = invoke(capsys, "qdim", "--type", "A", "--rank", "1", "--level", "2", "--weight", "1")
    assert (code, out.strip()) == (0, "1.414213562373")


def test_precision_flag_and_env(capsys, monkeypatch):
    argv = ("qdim", "--type", "G", "--rank", "2", "--level", "1", "--weight", "0,1")
    assert invoke(capsys, *argv, "--precision", "4")[1].strip() == "1.6180"
    monkeypatch.setenv("PARAFUSION_PRECISION", "30")
    assert invoke(capsys, *argv, "--precision", "4")[1].strip() == "1.618033988749894848204586834366"


def test_verify_case(capsys):
    code, out, _ = invoke(capsys, "verify", "--type", "G", "--rank", "2", "--level", "1")
    assert code == 0
    passed = [line.split("  ")[1] for line in out.splitlines() if line.startswith("PASS")]
    for name in ("dual(Q_L)=P", "count identity", "glob identity"):
        assert name in passed
    assert "FAIL" not in out


def test_verify_json(capsys):
    code, out, _ = invoke(capsys, "verify", "--type", "A", "--rank", "2", "--level", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert all(c["passed"] for c in data["checks"])


def test_rootdata(capsys):
    code, out, _ = invoke(capsys, "rootdata", "--type", "B", "--rank", "2", "--level", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["marks"] == [1, 2] and data["I"] == [1] and data["dual_coxeter"] == 3
    assert (data["P/Q"]["order"], data["Q/Q_L"]["order"], data["Q/kQ_L"]["order"]) == (2, 2, 8)


def test_modules(capsys):
    code, out, _ = invoke(capsys, "modules", "--type", "A", "--rank", "1", "--level", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert [m["conformal_weight"] for m in data["modules"]] == ["0", "3/16", "1/2"]


def test_fusion_affine(capsys):
    code, out, _ = invoke(capsys, "fusion-affine", "--type", "A", "--rank", "1", "--level", "2", "1", "1",
                          "--format", "json")
    assert code == 0
    assert json.loads(out) == {"inputs": [[1], [1]],
                               "outputs": [{"label": [0], "mult": 1}, {"label": [2], "mult": 1}]}


def test_fusion_para(capsys):
    code, out, _ = invoke(capsys, "fusion", "--type", "A", "--rank", "1", "--level", "2", "1@0", "1@1",
                          "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["inputs"] == [{"Lambda": [1], "coset": [0]}, {"Lambda": [1], "coset": [0]}]
    assert [o["label"] for o in data["outputs"]] == [{"Lambda": [0], "coset": [0]}, {"Lambda": [0], "coset": [1]}]
    code, out, _ = invoke(capsys, "fusion", "--type", "A", "--rank", "1", "--level", "2", "1", "1")
    assert code == 0 and out.splitlines() == ["1 x 0@0", "1 x 0@1"]


@pytest.mark.parametrize("argv", [
    ["qdim", "--type", "A", "--rank", "1", "--level", "2", "--weight", "1,x"],
    ["qdim", "--type", "A", "--rank", "1", "--level", "2", "--weight", "3"],
    ["qdim", "--type", "A", "--rank", "1", "--level", "2", "--weight", "1,0"],
    ["qdim", "--type", "Q", "--rank", "1", "--level", "2", "--weight", "1"],
    ["classify", "--type", "D", "--rank", "3", "--level", "1"],
    ["classify", "--type", "A", "--rank", "1", "--level", "0"],
    ["classify", "--type", "A", "--rank", "1"],
    ["classify", "--rank", "1", "--level", "1"],
    ["fusion", "--type", "B", "--rank", "2", "--level", "2", "0,0@9,9", "0,0"],
    ["fusion", "--type", "B", "--rank", "2", "--level", "2", "0,0@a", "0,0"],
    ["classify", "--type", "A", "--rank", "x", "--level", "1"],
    ["bogus"],
    [],
])
def test_input_errors_exit_1(capsys, argv):
    code, out, err = invoke(capsys, *argv)
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_rank_constraint_is_named(capsys):
    _, _, err = invoke(capsys, "rootdata", "--type", "D", "--rank", "3")
    assert "4" in err


def test_consistency_failure_exit_2(capsys, monkeypatch):
    def broken(rs, k):
        raise ConsistencyError("count identity", "forced")

    monkeypatch.setattr(pf, "classify", broken)
    code, _, err = invoke(capsys, "classify", "--type", "A", "--rank", "1", "--level", "2")
    assert code == 2
    assert "count identity" in err


def test_cache_dir(capsys, tmp_path):
    try:
        code, out, _ = invoke(capsys, "fusion-affine", "--type", "A", "--rank", "2", "--level", "2",
                              "1,0", "1,0", "--cache-dir", str(tmp_path))
        assert code == 0
        (path,) = tmp_path.glob("*.json")
        entries = json.loads(path.read_text())
        assert {"inputs": [[1, 0], [1, 0]],
                "outputs": [{"label": [0, 1], "mult": 1}, {"label": [2, 0], "mult": 1}]} in entries
    finally:
        affine.set_cache_dir(None)
        affine._ring.cache_clear()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "parafusion", "qdim", "--type", "A", "--rank", "1",
                           "--level", "2", "--weight", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1.414213562373"
    proc = subprocess.run([sys.executable, "-m", "parafusion", "qdim", "--type", "A"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and proc.stderr


def test_verify_full_matrix(capsys):
    code, out, _ = invoke(capsys, "verify")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 10 and all(line.startswith("PASS") for line in lines)
