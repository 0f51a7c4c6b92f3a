import json

import pytest

from jackcluster.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out


def test_compute(capsys, tmp_path):
    code, out = run(capsys, "compute", "jack_sym", "--label", "2,0",
                    "--n", "2", "--alpha", "generic")
    assert code == 0
    assert "([2]/[1*alpha^1 + 1])*z1^1*z2^1" in out


def test_compute_freqs(capsys):
    code, out = run(capsys, "compute", "jack_sym", "--label", "[1,0,1,0,1]",
                    "--alpha", "-2")
    assert code == 0 and "nvars=3" in out


def test_verify_report_exit_codes(capsys, tmp_path):
    rf = str(tmp_path / "r.jsonl")
    code, out = run(capsys, "--report-file", rf, "verify", "PROP1",
                    "r=2", "kappa=1,0,0", "N=3")
    assert code == 0 and "holds" in out
    code, out = run(capsys, "--report-file", rf, "verify", "PROP1",
                    "r=2", "kappa=1,0,0", "N=3", "perturb=1")
    assert code == 1 and "fails" in out
    code, out = run(capsys, "--report-file", rf, "report", "--format", "json")
    assert code == 1
    data = json.loads(out)
    assert [r["verdict"] for r in data["reports"]] == ["holds", "fails"]
    code, out = run(capsys, "--report-file", rf, "report", "--format", "text")
    assert code == 1 and "1 failing" in out


def test_scan_config(capsys, tmp_path):
    rf = str(tmp_path / "r.jsonl")
    cfg = tmp_path / "scan.json"
    cfg.write_text(json.dumps({
        "identities": ["PROP1", "EQ14_1"],
        "ranges": {"PROP1": {"r": [2], "N": [3], "max_weight": 0},
                   "EQ14_1": {"l": [1], "N": [2, 3]}},
        "cache_dir": str(tmp_path / "cache"),
    }))
    code, out = run(capsys, "--report-file", rf, "scan", str(cfg))
    assert code == 0
    assert "3 case(s), 0 failing" in out


def test_bad_case_param(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "PROP1", "r2"])
