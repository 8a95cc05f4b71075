import csv
import io
import json
import math
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from powerkneading import __version__
from powerkneading.cli import main
from powerkneading.reports import Check, Table, VerificationReport, fmt_num

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def footer(text):
    return dict(line[2:].split(": ", 1) for line in text.splitlines() if line.startswith("# "))


def test_orbit_period_two(capsys):
    code, out, _ = run(capsys, "orbit", "--alpha", "2", "--a", "1", "--n", "6")
    assert code == 0
    rows = parse_csv(out)
    assert [r["symbol"] for r in rows] == ["C", "R", "C", "R", "C", "R", "C"]
    assert footer(out)["status"] == "hit_critical" and footer(out)["index"] == "2"


def test_orbit_rlrl_symbols(capsys):
    code, out, _ = run(capsys, "orbit", "--alpha", "2", "--a", "1.2", "--n", "8", "--format", "csv")
    assert code == 0
    rows = parse_csv(out)
    assert len(rows) == 9
    assert "".join(r["symbol"] for r in rows[1:]) == "RLRLRLRL"
    assert float(rows[4]["y_n"]) == pytest.approx(-0.0875648)
    assert float(rows[4]["x_n"]) == pytest.approx(1.2 * -0.0875648)
    assert "\r" not in out


def test_orbit_invalid_alpha(capsys):
    code, _, err = run(capsys, "orbit", "--alpha", "0.9", "--a", "1.2")
    assert code == 2
    assert "alpha must exceed 1" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["orbit", "--alpha", "2"],
        ["orbit", "--alpha", "2", "--a", "1", "--t", "1"],
        ["orbit", "--alpha", "two", "--a", "1"],
        ["orbit", "--alpha", "2", "--a", "1", "--n", "100"],
        ["orbit", "--alpha", "nan", "--a", "1"],
        ["solve", "--alpha", "2", "--kneading", "RLL"],
        ["solve", "--alpha", "2", "--kneading", "RLRC", "--tol", "1e-16"],
        ["scan", "ratios", "--alpha", "2", "--abar-grid", "-6:-0.1"],
        ["scan", "ratios", "--alpha", "2", "--abar-grid", "-6:-0.1:50"],
        ["scan", "g", "--alpha", "2", "--steps", "1"],
        ["scan", "discrepancy", "--alpha", "2", "--abar-grid", "-6:-1:10"],
        ["verify", "props", "--samples", "10"],
        ["verify", "nonsense", "--seed", "1"],
        ["frobnicate"],
        [],
    ],
)
def test_invalid_input_exits_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_solve_rlrc(capsys):
    code, out, _ = run(capsys, "solve", "--alpha", "2", "--kneading", "RLRC")
    assert code == 0
    (row,) = parse_csv(out)
    assert float(row["a"]) == pytest.approx(1.3107026413, abs=1e-9)
    assert float(row["residual"]) <= 1e-12
    assert float(row["bracket_lo"]) <= float(row["a"]) <= float(row["bracket_hi"])


def test_solve_rc_list(capsys):
    code, out, _ = run(capsys, "solve", "--alphas", "1.5,2,3", "--kneading", "RC")
    assert code == 0
    rows = parse_csv(out)
    assert [float(r["a"]) for r in rows] == [1.0, 1.0, 1.0]


def test_solve_rlrrrlrc_json(capsys):
    code, out, _ = run(capsys, "solve", "--alpha", "2", "--kneading", "RLRRRLRC", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    a = doc["rows"][0][doc["columns"].index("a")]
    assert a == pytest.approx(1.3815474844, abs=1e-9)


def test_sweep_grid_syntax(capsys):
    code, out, _ = run(capsys, "sweep", "--alphas", "1.5:3:4", "--kneading", "RLRC")
    assert code == 0
    rows = parse_csv(out)
    assert [float(r["alpha"]) for r in rows] == [1.5, 2.0, 2.5, 3.0]
    assert all(1 < float(r["a"]) < float(r["a_escape"]) for r in rows)


def test_kneading_command(capsys):
    code, out, _ = run(capsys, "kneading", "--alpha", "2", "--a", "1.3815474844", "--n", "8", "--c-tol", "1e-6")
    assert code == 0
    assert parse_csv(out)[0]["kneading"] == "RLRRRLRC"


def test_kneading_abar_chart(capsys):
    code, out, _ = run(capsys, "kneading", "--alpha", "2", "--abar", "-1.3862943611198906", "--n", "8")
    assert code == 0
    row = parse_csv(out)[0]
    assert float(row["a"]) == pytest.approx(1.2)
    assert row["kneading"] == "RLRLRLRL"


def test_scan_g(capsys):
    code, out, _ = run(capsys, "scan", "g", "--alpha", "2", "--steps", "100")
    assert code == 0
    assert len(parse_csv(out)) == 100
    assert footer(out)["all slopes > 1"] == "true"


def test_scan_taugamma(capsys):
    code, out, _ = run(capsys, "scan", "taugamma", "--alpha", "2", "--samples", "50")
    assert code == 0
    rows = parse_csv(out)
    assert len(rows) == 50
    taus = [float(r["tau"]) for r in rows]
    assert taus == sorted(taus)
    assert footer(out)["gamma strictly increasing in tau"] == "true"


def test_scan_ratios_negative_grid(capsys):
    code, out, _ = run(capsys, "scan", "ratios", "--alpha", "2", "--abar-grid", "-6:-0.9:50", "--n-max", "5")
    assert code == 0
    foot = footer(out)
    assert foot["all ratios strictly increasing"] == "true"
    assert all(foot[f"n={n} increasing"] == "true" for n in range(6))
    assert len(parse_csv(out)) == 50 * 6


def test_scan_discrepancy_pair_and_grid(capsys):
    code, out, _ = run(capsys, "scan", "discrepancy", "--alpha", "2", "--abar", "-3", "--abar-prime", "-2")
    assert code == 0
    assert footer(out)["all margins > 0"] == "true"
    code, out, _ = run(
        capsys, "scan", "discrepancy", "--alpha", "3", "--abar-grid", "-6:-0.5:20", "--samples", "4", "--seed", "2"
    )
    assert code == 0
    assert len(parse_csv(out)) == 4 * 9


def test_scan_discrepancy_failure_exit(capsys):
    # equal parameters make every margin zero, so the strict check fails
    code, out, _ = run(capsys, "scan", "discrepancy", "--alpha", "2", "--abar", "-3", "--abar-prime", "-3")
    assert code == 1
    assert footer(out)["all margins > 0"] == "false"


def test_scan_g_outside_regime_is_invalid(capsys):
    code, _, err = run(capsys, "scan", "g", "--alpha", "2", "--t-range", "0.1:3")
    assert code == 2


def test_verify_report_schema_and_determinism(capsys):
    argv = ("verify", "lemma", "--samples", "40", "--seed", "7")
    code, first, _ = run(capsys, *argv)
    assert code == 0
    code, second, _ = run(capsys, *argv)
    assert first == second
    doc = json.loads(first)
    jsonschema.validate(doc, SCHEMA)
    assert doc["version"] == __version__
    assert doc["config"]["samples"] == 40 and doc["seed"] == 7
    assert doc["status"] == "pass"


@pytest.mark.parametrize("suite", ["props", "ratios", "uniqueness", "slopes"])
def test_verify_suites_pass(capsys, suite):
    code, out, _ = run(capsys, "verify", suite, "--samples", "50", "--seed", "3")
    assert code == 0
    jsonschema.validate(json.loads(out), SCHEMA)


def test_verify_csv_format(capsys):
    code, out, _ = run(capsys, "verify", "slopes", "--seed", "1", "--format", "csv", "--alphas", "2")
    assert code == 0
    rows = parse_csv(out)
    assert {r["status"] for r in rows} == {"pass"}


def test_verify_failure_exit_code(capsys, monkeypatch):
    import powerkneading.cli as cli

    def failing(*args, **kwargs):
        return VerificationReport("slopes", 1, {}, [Check("slopes", "x", False, "min_slope", 0.5, 1.0, 2)])

    monkeypatch.setattr(cli, "run_suite", failing)
    code, out, _ = run(capsys, "verify", "slopes", "--seed", "1")
    assert code == 1
    assert json.loads(out)["status"] == "fail"


def test_output_file_and_env_dir(capsys, tmp_path, monkeypatch):
    target = tmp_path / "o.csv"
    assert main(["orbit", "--alpha", "2", "--a", "1.2", "--n", "3", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert target.read_bytes().startswith(b"n,y_n,x_n,symbol\n")
    monkeypatch.setenv("POWERKNEADING_OUT_DIR", str(tmp_path / "runs"))
    assert main(["scan", "g", "--alpha", "2", "--steps", "5"]) == 0
    assert (tmp_path / "runs" / "scan_g.csv").exists()


@given(values=st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=20))
def test_csv_roundtrip_full_precision(values):
    table = Table("t", ("i", "v"), [(i, v) for i, v in enumerate(values)])
    parsed = parse_csv(table.to_csv())
    assert [float(r["v"]) for r in parsed] == values


def test_number_formatting():
    assert fmt_num(0.1) == "0.10000000000000001"
    assert fmt_num(True) == "true" and fmt_num(None) == "" and fmt_num(3) == "3"


def test_nonfinite_json_stays_standard():
    rep = VerificationReport("slopes", 0, {}, [Check("slopes", "x", True, "min_slope", math.inf, 1.0, 1)])
    doc = json.loads(rep.to_json())
    assert doc["checks"][0]["value"] == "inf"
    jsonschema.validate(doc, SCHEMA)
