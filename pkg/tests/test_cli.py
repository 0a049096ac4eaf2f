import json
import os
from pathlib import Path

import pytest

from crtorsion.cli import run

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def doc(name):
    return str(DATA / f"{name}.json")


def test_all_demo_documents_validate(capsys):
    for path in sorted(DATA.glob("*.json")):
        code = run(["validate", str(path)])
        assert code == (2 if path.stem == "bad" else 0), path.name


def test_validate_bad_message(capsys):
    assert run(["validate", doc("bad")]) == 2
    assert "gcd(alpha,beta) != 1 at fiber 0" in capsys.readouterr().err


def test_torsion_lens(capsys):
    assert run(["torsion", doc("lens21")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["kappa_M_rho"] == 0
    assert out["T_RS"] == pytest.approx(4.0, rel=1e-15)
    assert out["kappa_prime_zero"] == pytest.approx(-2.772588722239781, rel=1e-15)


def test_trace_check_poincare(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = run(["trace-check", doc("poincare"), "--tmin", "0.2", "--tmax", "5", "--points", "8",
                "--tol", "1e-8", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["passed"] and len(report["points"]) == 8


def test_failed_identity_exit_code(capsys):
    # both sides are computed, but 1e-14 is below their floating-point agreement
    assert run(["trace-check", doc("trivial"), "--tol", "1e-17"]) == 1


def test_unreachable_tolerance_is_input_error(capsys):
    # the direct mode sum would need far more than its mode budget
    assert run(["series-check", doc("poincare"), "--s", "1,2", "--tol", "1e-12"]) == 2
    assert "budget" in capsys.readouterr().err


def test_zeta_check_negative_s_flag(capsys):
    assert run(["zeta-check", doc("twisted"), "--s", "-1.5,0", "--s", "-1,0.3"]) == 0


def test_series_check(capsys):
    assert run(["series-check", doc("trivial")]) == 0


def test_csv_headers(capsys):
    run(["orbits", doc("poincare"), "--max-length", "7", "--format", "csv"])
    assert capsys.readouterr().out.splitlines()[0] == "kind,fiber,n,length,fuller_num,fuller_den,rtr"
    run(["kappa", doc("trivial"), "--s", "2,0", "--format", "csv"])
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "re_s,im_s,re_kappa,im_kappa"
    assert len(lines) == 2


def test_deterministic_output(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        run(["theta", doc("twisted"), "--tmin", "0.1", "--tmax", "3", "--points", "4", "--out", str(path)])
    assert a.read_bytes() == b.read_bytes()
    c, d = tmp_path / "c.csv", tmp_path / "d.csv"
    for path in (c, d):
        assert run(["finite-selftest", "--seed", "4", "--format", "csv", "--out", str(path)]) == 0
    assert c.read_bytes() == d.read_bytes()


def test_finite_selftest_covers_both_weights(capsys):
    assert run(["finite-selftest", "--seed", "1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert all("derham" in case and "contact" in case for case in report["cases"])


def test_input_errors(tmp_path, capsys):
    assert run(["bogus", doc("trivial")]) == 2
    assert run(["torsion"]) == 2
    broken = tmp_path / "broken.json"
    broken.write_text('{"seifert": {"genus": 0, "b": 1}, "holonomy": [{"x": "1/0", "dim": 1}]}')
    assert run(["torsion", str(broken)]) == 2
    assert "holonomy[0].x" in capsys.readouterr().err
    assert run(["torsion", doc("trivial"), "--out", str(tmp_path / "missing" / "x.json")]) == 2
    assert run(["kappa", doc("trivial"), "--s", "nope"]) == 2


def test_atomic_write_leaves_no_temp(tmp_path, capsys):
    run(["invariants", doc("poincare"), "--out", str(tmp_path / "inv.json")])
    assert os.listdir(tmp_path) == ["inv.json"]
    inv = json.loads((tmp_path / "inv.json").read_text())
    assert inv["chi_orbifold"] == "1/30"
