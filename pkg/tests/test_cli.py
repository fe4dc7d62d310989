import json
import math

import pytest

from mahler import rudin_shapiro
from mahler.cli import EXIT_FAILED_CHECK, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_construct_rs_json(capsys):
    code, out = run(capsys, "construct", "--rs", "3")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["n"] == 3 and data["N"] == 8
    assert data["p"] == rudin_shapiro(3).p.to_text()


def test_construct_fekete_text(capsys):
    code, out = run(capsys, "construct", "--fekete", "5", "--format", "text")
    assert code == EXIT_OK
    assert out.strip() == "0+--+"


def test_construct_from_file(tmp_path, capsys):
    path = tmp_path / "poly.txt"
    path.write_text("+-+\n")
    code, out = run(capsys, "construct", "--file", str(path))
    assert code == EXIT_OK
    assert json.loads(out)["coeffs"] == "+-+"


def test_eval_csv(capsys):
    code, out = run(capsys, "eval", "--rs", "2", "--m", "8", "--format", "csv")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "index,theta,re,im,abs"
    assert len(lines) == 9
    first = lines[1].split(",")
    assert float(first[2]) == pytest.approx(2.0)  # P_2(1) = 2


def test_measure_mahler_json(capsys):
    code, out = run(capsys, "measure", "--rs", "2")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["q"] == 0.0
    assert data["method"] == "quadrature"
    assert data["value"] == pytest.approx(1.8392867552141612, rel=1e-6)
    assert set(data) == {"value", "q", "alpha", "beta", "method", "samples", "err"}


def test_measure_jensen_matches(capsys):
    code, out = run(capsys, "measure", "--rs", "2", "--method", "jensen")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["method"] == "jensen"
    assert data["value"] == pytest.approx(1.8392867552141612, rel=1e-9)


def test_measure_arc_and_q(capsys):
    code, out = run(capsys, "measure", "--rs", "4", "--q", "2",
                    "--arc", "0.5", "2.5")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["alpha"] == 0.5 and data["beta"] == 2.5
    assert data["q"] == 2.0 and data["value"] > 0


def test_moments_output(capsys):
    code, out = run(capsys, "moments", "--rs", "4", "--k-max", "10")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["k_max"] == 10
    assert data["values"][1] == pytest.approx(0.5, abs=1e-8)


def test_verify_statement_pass(capsys):
    code, out = run(capsys, "verify", "--statement", "parseval", "--n", "8")
    assert code == EXIT_OK
    assert json.loads(out)["passed"] is True


def test_verify_all_small(capsys):
    code, out = run(capsys, "verify", "--all", "--n-max", "5")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["passed"] is True
    assert len(data["reports"]) > 5


def test_sweep_csv(capsys):
    code, out = run(capsys, "sweep", "--rs", "12", "--count", "2",
                    "--format", "csv")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "n,alpha,beta,m0,ratio,length_class"
    assert len(lines) == 7  # 3 width classes x 2 arcs
    row = lines[1].split(",")
    assert row[0] == "12"
    assert float(row[2]) - float(row[1]) == pytest.approx(
        math.log(4096) ** 1.5 / 64.0)


def test_sweep_seed_reproducible(capsys):
    _, a = run(capsys, "sweep", "--rs", "12", "--count", "2",
               "--format", "csv", "--seed", "9")
    _, b = run(capsys, "sweep", "--rs", "12", "--count", "2",
               "--format", "csv", "--seed", "9")
    assert a == b


def test_random_subcommand(capsys):
    code, out = run(capsys, "random", "--degree", "200", "--trials", "200",
                    "--seed", "3")
    assert code == EXIT_OK
    assert json.loads(out)["passed"] is True


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "res.json"
    code, _ = run(capsys, "measure", "--rs", "2", "--out", str(target))
    assert code == EXIT_OK
    assert json.loads(target.read_text())["value"] > 1.8


def test_usage_errors():
    assert main(["construct"]) == EXIT_USAGE  # missing family flag
    assert main(["measure", "--rs", "2", "--arc", "1.0", "1.0"]) == EXIT_USAGE
    assert main(["construct", "--file", "/nonexistent/path"]) == EXIT_USAGE


def test_failed_check_exit_code(monkeypatch, capsys):
    from mahler import verify as verify_mod
    failed = verify_mod.VerificationReport("parseval", False, -1.0, "n=8", {})
    monkeypatch.setattr(verify_mod, "run_statement", lambda *a, **k: failed)
    code, out = run(capsys, "verify", "--statement", "parseval", "--n", "8")
    assert code == EXIT_FAILED_CHECK
    assert json.loads(out)["passed"] is False
