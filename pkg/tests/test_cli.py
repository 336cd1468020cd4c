import json
import shutil
import subprocess
import sys

import pytest

from knappflow import acceptance, cli
from knappflow.construction import make_params

EPS, RHO = 0.01, 2e-6


def run_cli(argv, capsys):
    rv = cli.main(argv)
    out, err = capsys.readouterr()
    return rv, out, err


def test_window_prints_interval(capsys):
    rv, out, _ = run_cli(["window", "--eps", "0.01", "--rho", "2e-6", "--k", "1"], capsys)
    assert rv == 0
    lo, hi = out.strip().strip("()").split(",")
    assert 627.3 < float(lo) < 627.4
    assert 629.3 < float(hi) < 629.4


def test_window_prints_empty(capsys):
    rv, out, _ = run_cli(["window", "--eps", "0.01", "--rho", "1e-3", "--k", "2"], capsys)
    assert rv == 0
    assert out.strip() == "EMPTY"


def test_window_invalid_rho_exits_2(capsys):
    rv, _, err = run_cli(["window", "--eps", "0.01", "--rho", "1.5", "--k", "1"], capsys)
    assert rv == 2
    assert "error:" in err


def test_eval_json_payload(capsys):
    p = make_params(EPS, RHO, 1)
    xi = p.samp_box.center()
    xi_arg = ",".join(format(x, ".17g") for x in xi)
    rv, out, _ = run_cli(["eval", "--k", "1", "--xi", xi_arg], capsys)
    assert rv == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["k"] == 1
    assert payload["mode"] == "slab"
    assert payload["lambda"] == pytest.approx(p.lam, rel=1e-15)
    assert len(payload["per_sign"]) == 8
    assert set(payload["total"]) == {"re", "im"}
    total = complex(payload["total"]["re"], payload["total"]["im"])
    assert abs(total) > 0.0
    # conjugate pairing: the amplitude is purely imaginary
    assert abs(total.real) <= 1e-10 * abs(total)
    assert payload["flags"] == []


def test_eval_sign_restriction(capsys):
    p = make_params(EPS, RHO, 1)
    xi_arg = ",".join(format(x, ".17g") for x in p.samp_box.center())
    rv, out, _ = run_cli(["eval", "--k", "1", "--xi", xi_arg, "--signs", "++-"], capsys)
    assert rv == 0
    payload = json.loads(out)
    assert list(payload["per_sign"]) == ["++-"]
    assert payload["total"] == payload["per_sign"]["++-"]


def test_eval_bad_inputs_exit_2(capsys):
    rv, _, err = run_cli(["eval", "--k", "1", "--xi", "1,2"], capsys)
    assert rv == 2 and "error:" in err
    rv, _, err = run_cli(["eval", "--k", "1", "--xi", "1,2,3", "--signs", "+-"], capsys)
    assert rv == 2 and "error:" in err


def test_sweep_writes_deterministic_files(tmp_path, capsys):
    args = [
        "sweep",
        "--kmin", "1",
        "--kmax", "3",
        "--grid", "8,4,4",
        "--out", str(tmp_path / "a.csv"),
        "--json", str(tmp_path / "a.json"),
    ]
    rv, out, _ = run_cli(args, capsys)
    assert rv == 0
    assert f"wrote {tmp_path / 'a.csv'} (3 records)" in out
    assert f"wrote {tmp_path / 'a.json'}" in out

    args2 = [
        "sweep",
        "--kmin", "1",
        "--kmax", "3",
        "--grid", "8,4,4",
        "--out", str(tmp_path / "b.csv"),
        "--json", str(tmp_path / "b.json"),
    ]
    rv, _, _ = run_cli(args2, capsys)
    assert rv == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

    header = (tmp_path / "a.csv").read_text().splitlines()[0]
    assert header.startswith("k,lambda,t,sup_amp")
    report = json.loads((tmp_path / "a.json").read_text())
    assert report["schema"] == 1
    assert report["params"]["grid"] == [8, 4, 4]
    assert report["verdict"]["smooth_bound_fails"] is False


def test_sweep_rejects_bad_ranges(tmp_path, capsys):
    rv, _, err = run_cli(
        ["sweep", "--kmin", "5", "--kmax", "2", "--out", str(tmp_path / "x.csv")], capsys
    )
    assert rv == 2 and "kmax" in err
    rv, _, err = run_cli(
        ["sweep", "--kmin", "2", "--kmax", "2", "--out", str(tmp_path / "x.csv")], capsys
    )
    assert rv == 2 and "at least 3" in err


def test_sweep_bad_grid_is_argparse_error(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc_info:
        cli.main(["sweep", "--grid", "8,4", "--out", str(tmp_path / "x.csv")])
    assert exc_info.value.code == 2
    capsys.readouterr()


def test_verify_exit_code_wiring(monkeypatch):
    class _Res:
        def __init__(self, passed):
            self.passed = passed

    monkeypatch.setattr(acceptance, "run_all", lambda: [_Res(True), _Res(True)])
    assert cli.main(["verify"]) == 0
    monkeypatch.setattr(acceptance, "run_all", lambda: [_Res(True), _Res(False)])
    assert cli.main(["verify"]) == 1


def test_console_script_installed():
    exe = shutil.which("knappflow")
    assert exe is not None, "console script should be on PATH after pip install -e ."
    proc = subprocess.run(
        [exe, "window", "--eps", "0.01", "--rho", "2e-6", "--k", "1"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip().startswith("(")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "knappflow.cli", "window", "--eps", "0.01", "--rho", "1e-3", "--k", "3"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "EMPTY"
