import json
import os
import subprocess
import sys

import pytest
from mpmath import mp

from popovsum.arith import hecke_from_rk
from popovsum.cli import main
from popovsum.identities import IdentityId


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    lines = [json.loads(l) for l in out.splitlines() if l.strip()]
    return code, lines


MAIN_POINT = ["check", "--identity", "whittaker-main", "--k", "4", "--x", "2", "--y", "0.5",
              "--rho", "0.3", "--prec", "128", "--tol", "1e-20"]


def test_check_success(capsys):
    code, lines = run_cli(capsys, *MAIN_POINT)
    assert code == 0 and len(lines) == 1
    rep = lines[0]
    assert rep["passed"] and rep["domain_ok"] and rep["identity"] == "whittaker-main"
    assert float(rep["rel_residual"]) <= 1e-20
    assert all(isinstance(v, str) for v in rep["lhs"])


def test_check_domain_rejection(capsys):
    code, lines = run_cli(capsys, "check", "--identity", "whittaker-main", "--k", "4", "--x", "1",
                          "--y", "1.5", "--rho", "0")
    assert code == 2 and lines[0]["domain_ok"] is False and lines[0]["status"] == "domain"


def test_check_numeric_failure(capsys):
    code, lines = run_cli(capsys, "check", "--identity", "whittaker-hecke", "--k", "2", "--x", "2",
                          "--y", "0.5", "--mu", "0.2", "--variant", "printed")
    assert code == 3 and lines[0]["status"] == "residual"
    code, lines = run_cli(capsys, "check", "--identity", "theta-k", "--k", "2", "--x", "0.01",
                          "--max-terms", "16")
    assert code == 3 and lines[0]["status"] == "numeric"


def test_usage_errors(capsys):
    code, lines = run_cli(capsys, "check", "--identity", "nope")
    assert code == 1 and lines[0]["status"] == "usage"
    code, lines = run_cli(capsys, "check", "--identity", "theta-k", "--x", "1")
    assert code == 1 and lines[0]["status"] == "usage"
    code, lines = run_cli(capsys, "coeffs", "--kind", "rk", "--n", "3")
    assert code == 1
    code, _ = run_cli(capsys)
    assert code == 1


def test_coeffs(capsys):
    code, lines = run_cli(capsys, "coeffs", "--kind", "rk", "--k", "2", "--n", "5")
    assert code == 0 and lines[0]["values"] == [1, 4, 4, 0, 4, 8]
    code, lines = run_cli(capsys, "coeffs", "--kind", "tau", "--n", "4")
    assert lines[0]["values"] == [0, 1, -24, 252, -1472]


def test_list_identities(capsys):
    code, lines = run_cli(capsys, "list-identities")
    assert code == 0
    assert {l["identity"] for l in lines} == {i.value for i in IdentityId}
    main_line = next(l for l in lines if l["identity"] == "whittaker-main")
    assert "Re(x) > |Re(y)|" in main_line["domain"]


def test_oracle_audit(capsys):
    code, lines = run_cli(capsys, "oracle")
    assert code == 0 and len(lines) == 4 and all(l["passed"] for l in lines)


def test_sweep(tmp_path, capsys):
    grid = [
        {"identity": "whittaker-main", "k": 4, "x": "2", "y": "0.5", "rho": "0.3"},
        {"identity": "whittaker-main", "k": 4, "x": "1", "y": "1.5", "rho": "0"},
        {"identity": "theta-k", "k": 3, "x": "1.2,0.4"},
        {"identity": "tau-whittaker", "x": "1.5", "y": "0.4", "mu": "2"},
    ]
    path = tmp_path / "grid.json"
    path.write_text(json.dumps(grid))
    out = tmp_path / "out.jsonl"
    code = main(["sweep", "--grid", str(path), "--tol", "1e-18", "--jobs", "2", "--output", str(out)])
    lines = [json.loads(l) for l in out.read_text().splitlines()]
    assert code == 2
    assert [l["identity"] for l in lines] == [g["identity"] for g in grid]
    assert [l["domain_ok"] for l in lines] == [True, False, True, True]
    assert lines[0]["passed"] and lines[2]["passed"] and lines[3]["passed"]


def test_sweep_bad_entry_is_reported(tmp_path, capsys):
    path = tmp_path / "grid.json"
    path.write_text(json.dumps([{"identity": "theta-k", "k": 2, "x": "1"}, {"identity": "theta-k", "w": 1}]))
    code, lines = run_cli(capsys, "sweep", "--grid", str(path))
    assert code == 1 and lines[0]["passed"] and lines[1]["status"] == "usage"


def test_hecke_file(tmp_path, capsys):
    with mp.workprec(200):
        path = tmp_path / "hecke.json"
        path.write_text(hecke_from_rk(2, 300, 200).to_json())
    code, lines = run_cli(capsys, "check", "--identity", "bochner-hecke", "--x", "0.9",
                          "--hecke-file", str(path))
    assert code == 0 and lines[0]["params"]["hecke"] == "rk:2"
    code, lines = run_cli(capsys, "check", "--identity", "hecke-i", "--x", "2", "--y", "0.5",
                          "--hecke-kind", "rk", "--k", "3", "--n-terms", "8")
    assert code == 3 and "TableTooShortError" in lines[0]["error"]


def test_riesz_exact_input(capsys):
    code, lines = run_cli(capsys, "check", "--identity", "riesz-cn", "--k", "2", "--x", "3/2")
    assert code == 0 and lines[0]["params"]["x"] == "3/2" and lines[0]["tol"] == "1.0e-6"


def test_reports_are_reproducible(capsys):
    _, a = run_cli(capsys, *MAIN_POINT)
    _, b = run_cli(capsys, *MAIN_POINT)
    a[0].pop("wall_ms"), b[0].pop("wall_ms")
    assert json.dumps(a) == json.dumps(b)


def test_precision_env_var(capsys, monkeypatch):
    monkeypatch.setenv("PIL_DEFAULT_PREC", "96")
    code, lines = run_cli(capsys, "check", "--identity", "theta-k", "--k", "2", "--x", "0.8")
    assert code == 0 and lines[0]["precision_bits"] == 96


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "popovsum", "coeffs", "--kind", "rk", "--k", "1", "--n", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["values"] == [1, 2, 0, 0, 2]
