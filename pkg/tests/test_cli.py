import csv
import io
import json
import shutil
import subprocess
from importlib import resources

import jsonschema
import mpmath
import pytest

from vnskew import cli


@pytest.fixture(scope="module")
def schema():
    return json.loads(resources.files("vnskew").joinpath("schema/report.schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cumulants_csv(capsys):
    code, out, _ = run(capsys, "cumulants", "--m", "2", "--n", "2")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["quantity", "exact", "float"]
    assert rows[1][:2] == ["kappa1", "1/3"]
    assert [r[0] for r in rows[1:]] == ["kappa1", "kappa2", "kappa3", "skewness"]


def test_cumulants_json_validates(capsys, schema):
    code, out, _ = run(capsys, "cumulants", "--m", "4", "--n", "8", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    jsonschema.validate(rep, schema)
    assert rep["skewness"] < 0
    ref = float(mpmath.digamma(33) - mpmath.digamma(8) - mpmath.mpf(5) / 16)
    assert rep["kappa1"]["float"] == pytest.approx(ref, rel=1e-14)


def test_cumulants_vector_case(capsys, schema):
    code, out, err = run(capsys, "cumulants", "--m", "1", "--n", "7", "--format", "json")
    rep = json.loads(out)
    jsonschema.validate(rep, schema)
    assert code == 0 and rep["skewness"] is None and "note" in rep
    assert all(rep[k]["exact"] == "0" for k in ("kappa1", "kappa2", "kappa3"))
    code, out, err = run(capsys, "cumulants", "--m", "1", "--n", "7")
    assert "skewness" not in out and "m = 1" in err


@pytest.mark.parametrize("argv", [
    ("cumulants", "--m", "5", "--n", "3"),
    ("cumulants", "--m", "0", "--n", "3"),
    ("cumulants", "--n", "3"),
    ("density", "--m", "1", "--n", "4", "--samples", "20000"),
    ("simulate", "--m", "2", "--n", "2", "--samples", "50"),
    ("scaling", "--c", "1/3", "--n-list", "16"),
    ("scaling", "--c", "abc"),
    ("verify", "kappa3", "--max-n", "0"),
])
def test_invalid_arguments_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_parser_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["cumulants", "--m", "x", "--n", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["simulate", "--m", "2", "--n", "2", "--threads", "0"])
    assert exc.value.code == 2


def test_verify_small_scopes(capsys, schema):
    for scope in ("identities", "integrals", "kappa3"):
        code, out, _ = run(capsys, "verify", scope, "--max-m", "4", "--max-n", "6")
        rep = json.loads(out)
        jsonschema.validate(rep, schema)
        assert code == 0 and rep["ok"] and rep["scope"] == scope
        assert all(s["fail"] == 0 and s["pass"] > 0 for s in rep["suites"])


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "kappa3", "--max-m", "3", "--max-n", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["identity_id,pass,fail", "kappa3,6,0"]


def test_verify_failure_exits_1(capsys, monkeypatch):
    from vnskew import cumulants

    real = cumulants.kappa3

    def broken(d):
        return real(d) + 1 if cumulants._dims(d).n == 3 else real(d)

    monkeypatch.setattr(cumulants, "kappa3", broken)
    code, out, err = run(capsys, "verify", "kappa3", "--max-m", "2", "--max-n", "3")
    rep = json.loads(out)
    assert code == 1 and not rep["ok"]
    assert rep["suites"][0]["counterexample"]["params"]["n"] == 3
    assert "FAIL kappa3" in err


def test_simulate_is_deterministic(capsys, schema, tmp_path):
    argv = ("simulate", "--m", "3", "--n", "4", "--samples", "2000", "--seed", "42", "--format", "json")
    _, first, _ = run(capsys, *argv, "--threads", "1")
    _, second, _ = run(capsys, *argv, "--threads", "3")
    assert first == second
    rep = json.loads(first)
    jsonschema.validate(rep, schema)
    assert [r["order"] for r in rep["cumulants"]] == [1, 2, 3]


def test_simulate_vector_case_writes_zero_samples(capsys, tmp_path):
    path = tmp_path / "s.csv"
    code, out, _ = run(capsys, "simulate", "--m", "1", "--n", "9", "--samples", "100", "--samples-csv", str(path))
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["sample_index", "S"] and len(rows) == 101
    assert all(float(r[1]) == 0.0 for r in rows[1:])
    assert out.splitlines()[0] == "order,empirical,stderr,exact,exact_float,z"


def test_simulate_numeric_failure_exits_3(capsys, monkeypatch):
    from vnskew import ensemble

    def boom(*a, **k):
        raise ensemble.EigenSolverError("no convergence")

    monkeypatch.setattr(ensemble, "run_batch", boom)
    code, _, err = run(capsys, "simulate", "--m", "2", "--n", "2", "--samples", "200")
    assert code == 3 and "numerical failure" in err


def test_density_output(capsys, tmp_path):
    path = tmp_path / "d.csv"
    code, out, err = run(capsys, "density", "--m", "2", "--n", "3", "--samples", "20000", "--output", str(path))
    assert code == 0 and out == ""
    lines = path.read_text().splitlines()
    assert lines[0] == "x,empirical,gaussian,gram_charlier" and len(lines) == 402
    assert err.startswith("L1 empirical-gaussian=")


def test_scaling_table(capsys, schema):
    code, out, _ = run(capsys, "scaling", "--format", "json")
    rep = json.loads(out)
    jsonschema.validate(rep, schema)
    assert code == 0 and [r["n"] for r in rep["rows"]] == [16, 32, 64]
    for col in ("n2_kappa2", "n4_kappa3", "n_skewness"):
        vals = [r[col] for r in rep["rows"]]
        assert (max(vals) - min(vals)) / max(abs(v) for v in vals) < 0.25
    code, out, _ = run(capsys, "scaling", "--n-list", "4,8", "--samples", "2000")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 2 and "empirical_skewness" in rows[0]


@pytest.mark.skipif(shutil.which("vn-skew") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["vn-skew", "cumulants", "--m", "2", "--n", "2"], capture_output=True, text=True)
    assert out.returncode == 0 and "kappa1,1/3" in out.stdout
