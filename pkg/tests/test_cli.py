import json
import math

from kntorus import cli
from kntorus.verify import CheckResult


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_params_two_point(capsys):
    code, out, _ = run_cli(
        capsys, "params", "--tau-re", "0", "--tau-im", "1", "--q-re", "0",
        "--q-im", "0", "--two-point",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["config"]["two_point"] is True
    results = payload["results"]
    assert abs(results["separation_time"] - math.log(2) / 2) < 1e-10
    assert abs(results["mu"][0] - 0.5) < 1e-10 and abs(results["mu"][1]) < 1e-10
    assert results["lambda"]["lam7"] == [0.0, 0.0]
    assert set(payload) == {"config", "results", "checks"}


def test_params_csv(capsys):
    code, out, _ = run_cli(capsys, "params", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "name,re,im"
    names = [line.split(",")[0] for line in lines[1:]]
    assert "e1" in names and "lam7" in names and "separation_time" in names


def test_verify_quick_suite(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "elliptic", "--tau-re", "0", "--tau-im", "1", "--q-re", "0.2",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["all_passed"] is True
    for check in payload["checks"]:
        assert set(check) == {"name", "status", "max_residual", "tolerance"}
        assert check["status"] == "pass"


def test_verify_failure_exit_code(capsys, monkeypatch):
    def fake_suite(suite, cfg, window=8):
        return [CheckResult(name="stub", status="fail", max_residual=1.0, tolerance=0.1)]

    monkeypatch.setattr(cli, "verify_suite", fake_suite)
    code, out, _ = run_cli(capsys, "verify", "elliptic")
    assert code == 1
    payload = json.loads(out)
    assert payload["results"]["all_passed"] is False


def test_table_brackets_csv(capsys):
    code, out, _ = run_cli(
        capsys, "table", "brackets", "--window", "2", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "i,j,k,re,im"
    keys = [tuple(int(x) for x in line.split(",")[:3]) for line in lines[1:]]
    assert keys == sorted(keys)


def test_table_cocycle_witt(capsys):
    code, out, _ = run_cli(
        capsys, "table", "cocycle", "--formal-witt", "--window", "8",
    )
    assert code == 0
    payload = json.loads(out)
    entries = {(e["i"], e["j"]): e["chi"] for e in payload["results"]["entries"]}
    for m in range(2, 9):
        expect = 13.0 / 6.0 * (m**3 - m)
        assert abs(entries[(m, -m)][0] - expect) < 1e-9
        assert abs(entries[(m, -m)][1]) < 1e-12
    assert payload["results"]["reconciliation"] == []
    assert payload["results"]["sign_convention"] == {"sigma_c": 1, "sigma_chi": -1}


def test_table_cocycle_derived_reports(capsys):
    code, out, _ = run_cli(
        capsys, "table", "cocycle", "--tau-re", "0", "--tau-im", "1", "--q-re", "0.2",
        "--window", "6",
    )
    assert code == 0
    payload = json.loads(out)
    report = payload["results"]["reconciliation"]
    assert isinstance(report, list)
    for entry in report:
        assert set(entry) == {"i", "j", "chi_sum", "chi_closed", "abs_diff"}


def test_table_formal_lambdas(capsys):
    code, out, _ = run_cli(
        capsys, "table", "brackets", "--lam5", "1.5", "0", "--window", "2",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["params"]["lam5"] == [1.5, 0.0]
    assert payload["results"]["params"]["provenance"] == "formal"


def test_levellines_csv(capsys):
    code, out, _ = run_cli(
        capsys, "levellines", "--u", "0.0", "--samples", "32", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "u,re,im"
    assert len(lines) > 1
    for line in lines[1:]:
        u, re, im = (float(x) for x in line.split(","))
        assert u == 0.0


def test_levellines_json_schema(capsys):
    code, out, _ = run_cli(capsys, "levellines", "--u", "0.5", "--samples", "32")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["count"] == len(payload["results"]["points"])


def test_deterministic_output(tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    args = ["verify", "basis", "--tau-re", "0", "--tau-im", "1", "--q-re", "0.2"]
    assert cli.main(args + ["--output", str(out1)]) == 0
    assert cli.main(args + ["--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_output_file(tmp_path, capsys):
    path = tmp_path / "params.json"
    code, out, _ = run_cli(capsys, "params", "--output", str(path))
    assert code == 0 and out == ""
    payload = json.loads(path.read_text())
    assert "results" in payload


def test_usage_errors(capsys):
    code, _, err = run_cli(capsys, "params", "--tau-im", "-1")
    assert code == 2 and "tau" in err
    code, _, _ = run_cli(capsys, "nonsense")
    assert code == 2
    code, _, err = run_cli(capsys, "params", "--tol", "1")
    assert code == 2
    code, _, err = run_cli(capsys, "verify", "basis", "--window", "0")
    assert code == 2
    code, _, err = run_cli(capsys, "levellines", "--u", "0", "--samples", "4")
    assert code == 2
    code, _, err = run_cli(capsys, "params", "--q-re", "0", "--q-im", "0")
    assert code == 2 and "two_point" in err
