from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from qbtriple import cli, io
from qbtriple.errors import SchemaError
from qbtriple.triple import BoundaryParameter, synthetic_triple, weyl

CASES = Path(__file__).resolve().parents[1] / "cases"


def write_case(tmp_path: Path, case: dict, name: str = "case.json") -> str:
    path = tmp_path / name
    path.write_text(json.dumps(case), encoding="utf-8")
    return str(path)


# ---------------------------------------------------------------- serialization


def test_complex_round_trip():
    for z in (1.5, -2.0 + 3.0j):
        assert io.decode_complex(io.encode_complex(z)) == z
    M = np.array([[1.0, 2.0 - 1.0j], [0.5j, -3.0]])
    assert np.array_equal(io.decode_matrix(io.to_jsonable(M)), M)
    assert not np.iscomplexobj(io.decode_matrix([[1, 2], [3, 4]]))


def test_lambda_decoding():
    assert io.decode_lambdas(-1.0) == [-1.0]
    assert io.decode_lambdas([-1.0, -4.0]) == [-1.0, -4.0]
    assert io.decode_lambdas([[-1.0, 1.0]]) == [-1.0 + 1.0j]


def test_triple_json_round_trip():
    t = synthetic_triple(6, 2, 0)
    u = io.triple_from_json(json.loads(json.dumps(io.triple_to_json(t))))
    assert np.array_equal(u.T_act, t.T_act) and np.array_equal(u.G0, t.G0)
    assert np.array_equal(u.interior_rows, t.interior_rows)
    assert np.allclose(weyl(u, -1.0).M, weyl(t, -1.0).M, rtol=0, atol=0)


def test_parameter_json_round_trip():
    for theta in (BoundaryParameter.operator(np.array([[1.0, 1j], [-1j, 2.0]])),
                  BoundaryParameter.inverse_of(np.eye(2)), BoundaryParameter.pure_multivalued(2)):
        back = io.parameter_from_json(json.loads(json.dumps(io.parameter_to_json(theta))))
        assert np.array_equal(back.X, theta.X) and np.array_equal(back.Y, theta.Y)
    assert np.array_equal(io.parameter_from_spec("zero", 2).Y, np.zeros((2, 2)))
    assert np.array_equal(io.parameter_from_json({"operator": [[2.0]]}).Y, [[2.0]])


@pytest.mark.parametrize("path", sorted(CASES.glob("*.json")), ids=lambda p: p.stem)
def test_shipped_cases_validate(path):
    case = io.load_case(path)
    assert case["version"] == 1


def test_schema_rejects_unknown_key(tmp_path):
    case = json.loads((CASES / "disk_robin.json").read_text())
    case["colour"] = "blue"
    with pytest.raises(SchemaError):
        io.load_case(write_case(tmp_path, case))


def test_schema_rejects_wrong_version_and_bad_json(tmp_path):
    case = json.loads((CASES / "disk_robin.json").read_text())
    case["version"] = 2
    with pytest.raises(SchemaError):
        io.load_case(write_case(tmp_path, case))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(SchemaError):
        io.load_case(bad)


def test_multiplier_specs():
    assert io.multiplier_from_spec("dirichlet").kind == "dirichlet"
    assert io.multiplier_from_spec({"const": 2.0}).values(np.arange(2)).tolist() == [2.0, 2.0]
    g = io.multiplier_from_spec({"gap": {"base": 1.0, "r": 1.0}})
    assert g.values(np.array([1]))[0] == pytest.approx(1.5)


# ---------------------------------------------------------------- commands


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("command", ["triple-check", "weyl", "krein-verify", "trace"])
@pytest.mark.parametrize("case", ["sl1d_trace", "synthetic", "disk_robin_pair", "delta"])
def test_commands_pass_on_cases(tmp_path, capsys, command, case):
    code, out, _ = run([command, "--case", str(CASES / f"{case}.json"), "--out", str(tmp_path)], capsys)
    assert code == cli.EXIT_OK, out
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["pass"] and summary["exit"] == 0


def test_disk_robin_exponent(tmp_path, capsys):
    code, _, _ = run(["svals", "--case", str(CASES / "disk_robin.json"), "--out", str(tmp_path)], capsys)
    assert code == cli.EXIT_OK
    rep = json.loads((tmp_path / "svals_report.json").read_text())["reports"]
    assert len(rep) == 2
    for r in rep:
        assert r["target"] == 3.0 and abs(r["exponent"] - 3.0) <= 0.3 and r["pass"]
        assert "seed" in r and "stderr" in r


def test_sl1d_trace_value(tmp_path, capsys):
    code, _, _ = run(["trace", "--case", str(CASES / "sl1d_trace.json"), "--out", str(tmp_path)], capsys)
    assert code == cli.EXIT_OK
    rows = json.loads((tmp_path / "trace.json").read_text())["trace"]
    assert rows[0]["target"] == -1.0
    assert abs(io.decode_complex(rows[0]["lhs"]) + 1.0) <= 1e-4


def test_eig_robin_interval(tmp_path, capsys):
    code, out, _ = run(["eig", "--case", str(CASES / "sl1d_robin.json"), "--out", str(tmp_path)], capsys)
    assert code == cli.EXIT_OK, out


def test_schema_error_exit_code(tmp_path, capsys):
    case = json.loads((CASES / "sl1d_trace.json").read_text())
    case["unexpected"] = 1
    code, _, err = run(["weyl", "--case", write_case(tmp_path, case)], capsys)
    assert code == cli.EXIT_SCHEMA
    assert json.loads(err.strip().splitlines()[-1])["error"] == "schema"


def test_missing_case_is_schema_error(capsys):
    code, _, _ = run(["weyl"], capsys)
    assert code == cli.EXIT_SCHEMA


def test_collision_exit_code(tmp_path, capsys):
    # λ = 0 is the constant Neumann eigenvalue of the interval
    code, _, err = run(["weyl", "--case", str(CASES / "sl1d_trace.json"), "--out", str(tmp_path),
                        "--lambda", "0"], capsys)
    assert code == cli.EXIT_COLLISION
    payload = json.loads(err.strip().splitlines()[-1])
    assert payload["error"] == "eigenvalue_collision"
    assert json.loads((tmp_path / "summary.json").read_text())["exit"] == cli.EXIT_COLLISION


def test_injected_failure_reported_by_name(tmp_path, capsys):
    case = json.loads((CASES / "disk_robin.json").read_text())
    case["tolerance"] = {"exponent": 1e-9}
    code, out, _ = run(["svals", "--case", write_case(tmp_path, case), "--out", str(tmp_path)], capsys)
    assert code == cli.EXIT_FAIL
    assert "FAIL svals disk_robin" in out
    assert "failed: disk robin_vs_neumann" in out


def test_csv_output_is_bitwise_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert run(["svals", "--case", str(CASES / "disk_robin.json"), "--out", str(d), "--seed", "7"],
                   capsys)[0] == 0
    for name in ("svals_0.csv", "svals_1.csv", "svals_report.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
    head = (a / "svals_0.csv").read_text().splitlines()
    assert head[0] == "k,s_k"


def test_multiple_cases_in_parallel(tmp_path, capsys):
    argv = ["triple-check", "--case", str(CASES / "synthetic.json"), "--case", str(CASES / "sl1d_trace.json"),
            "--out", str(tmp_path), "--jobs", "2"]
    code, out, _ = run(argv, capsys)
    assert code == cli.EXIT_OK
    lines = [ln for ln in out.splitlines() if ln.startswith("PASS")]
    assert lines == ["PASS triple-check synthetic", "PASS triple-check sl1d_trace"]
    assert (tmp_path / "synthetic" / "summary.json").exists()


def test_export_power_law_is_collinear(tmp_path, capsys):
    spec = tmp_path / "spec.csv"
    k = np.arange(1, 101)
    cli.write_csv(spec, ["k", "s_k"], [(int(i), float(i) ** -2.5) for i in k])
    code, _, _ = run(["export", str(spec), "--out", str(tmp_path)], capsys)
    assert code == cli.EXIT_OK
    rows = np.loadtxt(tmp_path / "spec_loglog.csv", delimiter=",", skiprows=1)
    assert np.max(np.abs(rows[:, 2] - rows[:, 3])) <= 1e-10
    assert np.allclose(rows[:, 4], -2.5)


def test_export_empty_spectrum(tmp_path, capsys):
    spec = tmp_path / "empty.csv"
    spec.write_text("k,s_k\n", encoding="utf-8")
    code, _, _ = run(["export", str(spec), "--out", str(tmp_path)], capsys)
    assert code == cli.EXIT_SCHEMA
    zero = tmp_path / "zero.csv"
    zero.write_text("k,s_k\n1,0\n2,0\n", encoding="utf-8")
    assert run(["export", str(zero), "--out", str(tmp_path)], capsys)[0] == cli.EXIT_SCHEMA


def test_negative_seed_rejected(capsys):
    with pytest.raises(SystemExit):
        cli.main(["suite", "--seed", "-1"])
