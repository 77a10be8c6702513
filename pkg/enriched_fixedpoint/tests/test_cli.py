"""Pruebas del front end: códigos de salida, reportes y determinismo."""
import json

import pandas as pd
import pytest

from enriched_fixedpoint import __version__
from enriched_fixedpoint.cli import (
    EXIT_FALSIFIED, EXIT_INVALID_SPEC, EXIT_NON_CONVERGENCE, EXIT_OK, EXIT_PROPERTY_FAIL, EXIT_USAGE, main,
)

EX24_CONFIG = """
# Tu = 1 + u si u >= 0, 0 si u < 0
[space]
kind = euclidean
dim = 1

[mapping]
kind = piecewise-scalar
branch = [0, inf) : 1 : 1
branch = (-inf, 0) : 0 : 0

[comparison]
family = scaled-sum-st
params = 1/3

[contraction]
b = 0
variant = A
name = ex2.4
"""


def _read(path):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


@pytest.mark.parametrize("example_id", ["ex3.7", "ex2.4", "rem3.3"])
def test_examples_single_id_matches(example_id, tmp_path):
    out = tmp_path / "report.json"
    assert main(["examples", example_id, "--report", str(out)]) == EXIT_OK
    report = _read(out)
    outcome = report["examples"][0]
    assert outcome["id"] == example_id
    assert outcome["match"] is True
    assert report["seed"] == 42
    assert report["version"] == __version__


def test_ex37_example_reports_three_after_one_iteration(tmp_path):
    out = tmp_path / "r.json"
    main(["examples", "ex3.7", "--report", str(out)])
    solved = _read(out)["examples"][0]["solve"]
    assert solved["iterations"] == 1
    assert solved["fixed_point"]["coords"][0] == pytest.approx(3.0, abs=1e-12)


def test_ex24_example_carries_witness(tmp_path):
    out = tmp_path / "r.json"
    main(["examples", "ex2.4", "--report", str(out)])
    verified = _read(out)["examples"][0]["verify"]
    assert verified["verdict"] == "falsified"
    assert verified["witness"]["lhs"] == 1.0
    assert verified["witness"]["rhs"] == pytest.approx(2 / 3)


def test_unknown_example_is_usage_error(capsys):
    assert main(["examples", "ex9.*"]) == EXIT_USAGE
    out = capsys.readouterr().out
    assert "Disponibles" in out
    assert "rem3.3" in out and "sin punto fijo" in out


def test_examples_reports_are_byte_identical(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["examples", "--seed", "42", "--report", str(first)]) == EXIT_OK
    assert main(["examples", "--seed", "42", "--report", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    report = _read(first)
    assert report["command"] == ["examples", "--seed", "42"]
    assert report["all_match"] is True
    assert len(report["examples"]) == 8


def test_solve_ex36(tmp_path, capsys):
    out = tmp_path / "solve.json"
    trace = tmp_path / "trace.csv"
    code = main(["solve", "configs/ex3.6.cfg", "--report", str(out), "--trace-csv", str(trace)])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "Semilla: 42" in out
    assert "forma reducida" in out
    report = _read(tmp_path / "solve.json")
    assert report["exit_code"] == EXIT_OK
    assert report["solve"]["termination"] == "residual"
    assert report["solve"]["iterations"] <= 30
    assert report["solve"]["fixed_point"]["max_abs"] < 1e-10
    assert report["verify"]["verdict"] == "verified-on-samples"
    frame = pd.read_csv(trace)
    assert list(frame.columns) == ["n", "step_norm", "residual", "ratio"]


def test_solve_t2_reaches_sixteen(tmp_path):
    out = tmp_path / "t2.json"
    assert main(["solve", "configs/ex2.3-T2.cfg", "--report", str(out)]) == EXIT_OK
    assert _read(out)["solve"]["fixed_point"]["coords"][0] == pytest.approx(16.0, abs=1e-9)


def test_solve_refuses_kannan_06(tmp_path):
    out = tmp_path / "k.json"
    assert main(["solve", "configs/kannan06.cfg", "--report", str(out)]) == EXIT_INVALID_SPEC
    report = _read(out)
    assert report["certificate"]["valid"] is False
    assert report["certificate"]["branches"]["A2-rss"] == pytest.approx(1.2)
    assert "solve" not in report


def test_solve_non_convergence_codes():
    assert main(["solve", "configs/ex3.6.cfg", "--max-iters", "3", "--samples", "500"]) == EXIT_NON_CONVERGENCE
    assert main(["solve", "configs/rem3.3.cfg", "--samples", "500"]) == EXIT_NON_CONVERGENCE


def test_malformed_config_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("[space]\nkind = euclidean\nkind = sampled-function\n", encoding="utf-8")
    assert main(["solve", str(bad)]) == EXIT_USAGE
    out = capsys.readouterr().out
    assert "bad.cfg:3:" in out and "space.kind" in out


def test_verify_falsifies_ex24(tmp_path):
    cfg = tmp_path / "ex24.cfg"
    cfg.write_text(EX24_CONFIG, encoding="utf-8")
    out = tmp_path / "v.json"
    assert main(["verify", str(cfg), "--report", str(out)]) == EXIT_FALSIFIED
    assert _read(out)["verify"]["samples"] == 1


def test_verify_passes_ex39():
    assert main(["verify", "configs/ex3.9.cfg", "--samples", "2000"]) == EXIT_OK


@pytest.mark.parametrize("argv,expected", [
    (["axioms", "scaled-sum-st", "0.3", "A"], EXIT_OK),
    (["axioms", "scaled-sum-rst", "0.5", "A'"], EXIT_PROPERTY_FAIL),
    (["axioms", "scaled-r", "0.99", "A"], EXIT_OK),
    (["axioms", "no-such-family", "0.3"], EXIT_USAGE),
])
def test_axioms_exit_codes(argv, expected):
    assert main(argv + ["--samples", "300"]) == expected


def test_axioms_prints_discrepancy(capsys):
    assert main(["axioms", "scaled-max-st", "0.9", "A'", "--samples", "300"]) == EXIT_PROPERTY_FAIL
    assert "DISCREPANCY" in capsys.readouterr().out


def test_axioms_report_carries_witness(tmp_path):
    out = tmp_path / "ax.json"
    main(["axioms", "scaled-sum-rst", "0.5", "A'", "--samples", "300", "--report", str(out)])
    checks = {c["axiom"]: c for c in _read(out)["axioms"]["checks"]}
    assert checks["A'5"]["verdict"] == "fail"
    assert checks["A'5"]["witness"] == [1.0, 1.0, 0.0]


def test_axioms_report_lists_both_kannan_branches(tmp_path):
    out = tmp_path / "kannan.json"
    argv = ["axioms", "scaled-sum-st", "0.6", "A", "--samples", "300", "--report", str(out)]
    assert main(argv) == EXIT_PROPERTY_FAIL
    checks = {c["axiom"]: c for c in _read(out)["axioms"]["checks"]}
    assert checks["A2"]["failing_branches"] == ["A2-srs", "A2-rss"]


def test_diagnose_ex39_passes(tmp_path):
    out = tmp_path / "d.json"
    assert main(["diagnose", "configs/ex3.9.cfg", "--samples", "1000", "--report", str(out)]) == EXIT_OK
    verdicts = [d["verdict"] for d in _read(out)["diagnostics"]]
    assert verdicts == ["pass", "pass"]


def test_diagnose_slow_recipe_fails():
    argv = ["diagnose", "configs/ex3.9.cfg", "--samples", "1000", "--recipe", "power", "--gamma", "1",
            "--length", "1000"]
    assert main(argv) == EXIT_PROPERTY_FAIL


def test_specialize_codes():
    assert main(["specialize", "kannan", "0.3", "--b", "1"]) == EXIT_OK
    assert main(["specialize", "kannan", "0.6", "--b", "1"]) == EXIT_INVALID_SPEC
    assert main(["specialize", "zamfirescu", "0.3"]) == EXIT_USAGE


def test_argparse_errors_and_version():
    assert main([]) == EXIT_USAGE
    assert main(["--version"]) == EXIT_OK
    assert main(["solve", "configs/ex3.6.cfg", "--seed", "-1"]) == EXIT_USAGE
