import json
import subprocess
import sys

import pytest

from jps.cli import (EXIT_CONFIG, EXIT_FAIL, EXIT_OK, EXIT_UNSUPPORTED, ConfigError, Report,
                     emit_report, main, make_config, read_key_values)


def run_cli(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_series_compare(capsys):
    code, out, _ = run_cli(capsys, "homology", "--preset", "sklyanin-J", "--J", "2,3,5",
                           "--max-degree", "12", "--check", "series-compare")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["tables"]["homology"][0][:6] == [1, 4, 4, 8, 7, 12]
    assert rep["tables"]["series_expected"] == rep["tables"]["homology"]
    assert rep["checks"][0]["name"] == "series-compare" and rep["checks"][0]["pass"]
    assert rep["grading_convention"] == "canonical"


def test_identities_verb(capsys):
    code, out, _ = run_cli(capsys, "check-identities", "--seed", "7")
    assert code == EXIT_OK
    details = json.loads(out)["checks"][0]["details"]
    assert details["passed"] == details["total"] == 19


def test_genericity_exit(capsys):
    code, _, err = run_cli(capsys, "homology", "--preset", "sklyanin-J", "--J", "1,2,3")
    assert code == EXIT_UNSUPPORTED
    assert "J1 = 1" in err


@pytest.mark.parametrize("args", [
    ["homology", "--max-degree", "x"],
    ["homology", "--max-degree", "-1"],
    ["homology", "--J", "1,2"],
    ["homology", "--check", "nonsense"],
    ["homology", "--preset", "custom"],
    ["homology", "--config", "/nonexistent/file"],
])
def test_config_errors(capsys, args):
    code, _, err = run_cli(capsys, *args)
    assert code == EXIT_CONFIG and "config error" in err


def test_unsupported_check(capsys):
    code, _, err = run_cli(capsys, "generators", "--preset", "sklyanin-k", "--max-degree", "4")
    assert code == EXIT_UNSUPPORTED


def test_failing_check_exit(capsys, tmp_path):
    cas = tmp_path / "cas.txt"
    cas.write_text("P1 = x1*x2\nP2 = x3\n")
    code, out, err = run_cli(capsys, "milnor", "--preset", "custom", "--casimirs", str(cas),
                             "--max-degree", "5")
    assert code == EXIT_FAIL
    assert "milnor" in err
    assert json.loads(out)["checks"][0]["details"]["mu"] == "not finite up to 5"


def test_config_file_and_override(capsys, tmp_path):
    cas = tmp_path / "cas.txt"
    cas.write_text("# two diagonal quadrics\nP1 = x1^2+x2^2+x3^2+x4^2\nP2 = x1^2 + 2*x2^2 + 3*x3^2 + 4*x4^2\n")
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"preset = custom\ncasimirs = {cas}\nmax-degree = 6\nformat = json\n")
    code, out, _ = run_cli(capsys, "homology", "--config", str(cfg), "--max-degree", "3",
                           "--format", "csv")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "table,i,d,dim"
    assert len(lines) == 1 + 5 * 4
    assert "homology,1,3,12" in lines


def test_key_value_grammar():
    assert read_key_values("a = 1 # c\n\n b=x = y\n", "t") == {"a": "1", "b": "x = y"}
    with pytest.raises(ConfigError):
        read_key_values("novalue\n", "t")
    with pytest.raises(ConfigError):
        make_config("verify", {"bogus": "1"})


def test_bracket_table_verb(capsys):
    code, out, _ = run_cli(capsys, "bracket-table", "--preset", "sklyanin-k", "--k", "5/3",
                           "--format", "text")
    assert code == EXIT_OK
    assert "{x1,x2} = 25/9*x1*x2 - x3*x4" in out
    assert "PASS bracket-table" in out


def test_lambda_override_breaks_printed_table(capsys):
    code, out, _ = run_cli(capsys, "bracket-table", "--preset", "sklyanin-k", "--k", "2",
                           "--lambda", "1")
    assert code == EXIT_FAIL
    assert json.loads(out)["checks"][0]["details"]["mismatch_with_printed_table"]


def test_cohomology_verb(capsys):
    code, out, _ = run_cli(capsys, "cohomology", "--max-degree", "6", "--format", "text")
    assert code == EXIT_OK
    assert "H^4: -4:1 -3:4 -2:4" in out


def test_kernels_and_koszul_verbs(capsys):
    assert run_cli(capsys, "kernels", "--max-degree", "5")[0] == EXIT_OK
    assert run_cli(capsys, "koszul", "--max-degree", "4")[0] == EXIT_OK


def test_empty_report_is_valid_json():
    r = Report({"name": "x"})
    d = json.loads(emit_report(r, "json"))
    assert d["checks"] == [] and set(d) == {"structure", "grading_convention", "tables", "checks",
                                            "versions"}


def test_deterministic_json(capsys):
    args = ["verify", "--preset", "sklyanin-k", "--k", "2", "--max-degree", "5", "--seed", "4"]
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jps.cli", "milnor", "--max-degree", "6"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["checks"][0]["details"]["mu"] == 7
