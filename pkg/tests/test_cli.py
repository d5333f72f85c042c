"""
Tests for the qmat commands, run through the Typer app.
"""
import json

import pytest
from typer.testing import CliRunner

from qmat.main import app

runner = CliRunner()


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    monkeypatch.setenv("QMAT_CONFIG_PATH", str(tmp_path / "qmat_config.json"))


def test_help():
    result = runner.invoke(app, ["--help"])
    assert result.exit_code == 0
    assert "Usage: " in result.output


@pytest.mark.parametrize(
    "m, n, count", [(1, 1, "2"), (2, 2, "10"), (2, 3, "22")]
)
def test_hprimes_count(m, n, count):
    result = runner.invoke(
        app, ["--m", str(m), "--n", str(n), "hprimes", "count"]
    )
    assert result.exit_code == 0
    assert result.output.strip() == count


def test_nf():
    result = runner.invoke(app, ["nf", "X[2,2]*X[1,1]"])
    assert result.exit_code == 0
    assert result.output.strip() == (
        "(-q + q^-1)*X[1,2]*X[2,1] + X[1,1]*X[2,2]"
    )


def test_nf_rightmost_agrees():
    word = "X[3,3]*X[2,2]*X[1,1]"
    shape = ["--m", "3", "--n", "3"]
    left = runner.invoke(app, shape + ["nf", word])
    right = runner.invoke(app, shape + ["nf", "--strategy", "rightmost", word])
    assert left.exit_code == right.exit_code == 0
    assert left.output == right.output


def test_nf_json():
    result = runner.invoke(app, ["--format", "json", "nf", "X[2,1]*X[1,1]"])
    assert result.exit_code == 0
    assert json.loads(result.output) == [
        {"word": [[1, 1], [2, 1]], "coeff": "1*q^-1"}
    ]


def test_nf_specialized():
    result = runner.invoke(app, ["--q", "2", "nf", "X[2,1]*X[1,1]"])
    assert result.exit_code == 0
    assert result.output.strip() == "1/2*X[1,1]*X[2,1]"


def test_nf_mod_i1():
    result = runner.invoke(app, ["nf-mod-i1", "X[1,1]*X[2,2]"])
    assert result.exit_code == 0
    assert result.output.strip() == "q*X[2,1]*X[1,2]"
    cases = runner.invoke(app, ["nf-mod-i1", "--cases", "X[1,1]*X[2,2]"])
    assert cases.output == result.output


def test_minor_and_det():
    result = runner.invoke(app, ["minor", "--rows", "1,2", "--cols", "1,2"])
    assert result.exit_code == 0
    assert result.output.strip() == "-q*X[1,2]*X[2,1] + X[1,1]*X[2,2]"
    det = runner.invoke(app, ["det"])
    assert det.output == result.output
    bad = runner.invoke(app, ["--n", "3", "det"])
    assert bad.exit_code == 1
    assert "AlgebraError" in bad.output


def test_theta():
    result = runner.invoke(app, ["theta", "X[2,1]*X[1,2]"])
    assert result.exit_code == 0
    assert result.output.strip() == "q^-1*y[1]*y[2]*z[1]*z[2]"


def test_coinv():
    result = runner.invoke(
        app, ["coinv", "--preimage", "y[2]*y[1]*z[1]*z[2]"]
    )
    assert result.exit_code == 0
    assert result.output.splitlines() == ["coinvariant", "X[2,1]*X[1,2]"]

    result = runner.invoke(app, ["--format", "json", "coinv", "y[1] + z[1]"])
    assert result.exit_code == 0
    assert json.loads(result.output) == {"coinvariant": False, "witness": [1]}


def test_coinv_preimage_of_non_coinvariant():
    result = runner.invoke(app, ["coinv", "--preimage", "z[2]"])
    assert result.exit_code == 1
    assert "CoinvariantError" in result.output


def test_weights():
    result = runner.invoke(app, ["weights", "X[1,2]"])
    assert result.exit_code == 0
    assert result.output.strip() == "X[1,2]: rows (1, 0) cols (0, 1)"

    result = runner.invoke(
        app, ["--format", "json", "weights", "--gamma", "y[1]*z[2]*z[1]"]
    )
    assert result.exit_code == 0
    assert json.loads(result.output) == [
        {"word": [1, 3, 4], "bidegree": [1, 2], "gamma": 1}
    ]


def test_commutator():
    result = runner.invoke(app, ["commutator", "1", "1", "2", "2"])
    assert result.exit_code == 0
    assert result.output.splitlines() == ["alpha = q^2", "beta = q"]
    result = runner.invoke(
        app, ["--format", "json", "commutator", "1", "2", "2", "1"]
    )
    assert json.loads(result.output) == {"alpha": "1*q^0", "beta": "1*q^-1"}


def test_commutator_outside_the_shape():
    result = runner.invoke(
        app, ["--m", "2", "--n", "2", "commutator", "5", "5", "7", "7"]
    )
    assert result.exit_code == 1
    assert "AlgebraError" in result.output


def test_iso_check():
    result = runner.invoke(
        app,
        ["--m", "2", "--n", "3", "iso-check", "--rows", "2", "--cols", "3"],
    )
    assert result.exit_code == 0
    assert result.output.startswith("P_r2_c3:")
    assert "[pass]" in result.output


def test_iso_check_maximal_pair_is_an_error():
    result = runner.invoke(app, ["iso-check", "--rows", "1,2"])
    assert result.exit_code == 1
    assert "AlgebraError" in result.output


def test_hprimes_list_json():
    result = runner.invoke(app, ["--format", "json", "hprimes", "list"])
    assert result.exit_code == 0
    pairs = json.loads(result.output)
    assert len(pairs) == 10
    assert pairs[0]["id"] == "P_0"
    assert pairs[0]["generators"] == 1
    assert pairs[-1]["maximal"] is True


def test_hprimes_hasse():
    result = runner.invoke(app, ["--m", "1", "--n", "1", "hprimes", "hasse"])
    assert result.exit_code == 0
    assert result.output.strip() == "P_0 -> P_M"

    dot = runner.invoke(app, ["--format", "dot", "hprimes", "hasse"])
    assert dot.exit_code == 0
    assert "digraph hprimes" in dot.output


def test_hasse_cap_from_config():
    runner.invoke(app, ["config", "set", "hasse_cap", "5"])
    result = runner.invoke(app, ["hprimes", "hasse"])
    assert result.exit_code == 1
    assert "CapExceededError" in result.output


def test_dot_only_for_hasse():
    result = runner.invoke(app, ["--format", "dot", "nf", "X[1,1]"])
    assert result.exit_code == 1
    assert "QmatError" in result.output


def test_syntax_error_reports_position():
    result = runner.invoke(app, ["nf", "X[1,1] * * X[2,2]"])
    assert result.exit_code == 1
    error = json.loads(result.output.strip().splitlines()[-1])
    assert error["error"] == "ExpressionError"
    assert "position" in error


def test_zero_denominator_is_an_expression_error():
    result = runner.invoke(app, ["nf", "1/0*X[1,1]"])
    assert result.exit_code == 1
    error = json.loads(result.output.strip().splitlines()[-1])
    assert error["error"] == "ExpressionError"
    assert error["position"] == 0


def test_q_zero_rejected():
    result = runner.invoke(app, ["--q", "0", "nf", "X[1,1]"])
    assert result.exit_code == 1
    assert "ScalarError" in result.output


def test_verify_json():
    result = runner.invoke(
        app, ["--format", "json", "--max-degree", "2", "verify", "s-basis"]
    )
    assert result.exit_code == 0
    reports = [json.loads(line) for line in result.output.splitlines()]
    assert [r["d"] for r in reports] == [0, 1, 2]
    assert all(r["pass"] for r in reports)


def test_verify_table():
    result = runner.invoke(app, ["verify", "lemma33"])
    assert result.exit_code == 0
    assert "Verification" in result.output


@pytest.mark.parametrize("name", ["lemma33", "commutation"])
def test_verify_commutation_names(name):
    result = runner.invoke(app, ["--format", "json", "verify", name])
    assert result.exit_code == 0
    report = json.loads(result.output.strip())
    assert report["check"] == "lemma33"
    assert report["pass"]


def test_verify_over_cap():
    result = runner.invoke(
        app, ["--m", "4", "--max-degree", "1", "verify", "pbw"]
    )
    assert result.exit_code == 1
    assert "CapExceededError" in result.output


def test_verify_all(tmp_path):
    manifest = tmp_path / "manifest.yaml"
    manifest.write_text(
        "checks:\n"
        "  - check: theta-kernel\n"
        "    m: [1, 2]\n"
        "    n: 2\n"
        "    d: [1, 2]\n"
        "  - check: centrality\n"
        "    n: 2\n"
    )
    result = runner.invoke(
        app, ["--format", "json", "verify", "all", "--manifest", str(manifest)]
    )
    assert result.exit_code == 0
    reports = [json.loads(line) for line in result.output.splitlines()]
    assert len(reports) == 5
    assert all(r["pass"] for r in reports)


def test_verify_all_missing_manifest(tmp_path):
    result = runner.invoke(
        app, ["verify", "all", "--manifest", str(tmp_path / "missing.yaml")]
    )
    assert result.exit_code == 1
    assert "Manifest not found" in result.output
