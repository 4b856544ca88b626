"""CLI behavior: exit codes, output shapes, JSON schema conformance."""

import json
import shutil
import subprocess
from pathlib import Path

import jsonschema
import pytest

from certreal.cli import main

SCHEMA = json.loads(
    (Path(__file__).parent.parent / "docs" / "cli-schema.json").read_text())


def _json_out(capsys):
    doc = json.loads(capsys.readouterr().out)
    jsonschema.validate(doc, SCHEMA)
    return doc


# -- prove -----------------------------------------------------------------

def test_prove_exit_codes(capsys):
    assert main(["prove", "1 < 2"]) == 0
    assert "Proved" in capsys.readouterr().out
    assert main(["prove", "2 < 1"]) == 1
    assert "Refuted" in capsys.readouterr().out
    assert main(["prove", "1 < 1", "--max-prec", "8"]) == 2
    assert "Exhausted" in capsys.readouterr().out


def test_prove_trace_output(capsys):
    assert main(["prove", "pi > 3", "--trace"]) == 0
    out = capsys.readouterr().out
    assert "k=" in out and "lhs=[" in out and "rhs=[" in out


def test_prove_json_is_schema_valid(capsys):
    assert main(["prove", "exp(1) > 2", "--json", "--trace"]) == 0
    doc = _json_out(capsys)
    assert doc["command"] == "prove"
    assert doc["result"]["outcome"] == "proved"
    assert doc["verified"] is True
    assert doc["result"]["trace"]


def test_prove_json_exhausted(capsys):
    assert main(["prove", "1 < 1", "--max-prec", "8", "--json"]) == 2
    doc = _json_out(capsys)
    assert doc["result"]["outcome"] == "exhausted"
    assert doc["result"]["max_precision"] == 8
    assert "trace" not in doc["result"]


def test_prove_start_eps_sets_first_precision(capsys):
    assert main(["prove", "1 < 1", "--max-prec", "40", "--json", "--trace",
                 "--start-eps", "1/1024"]) == 2
    doc = _json_out(capsys)
    assert doc["result"]["trace"][0]["precision"] == 10


def test_prove_interval_backend(capsys):
    assert main(["prove", "pi > 3", "--backend", "interval", "--json"]) == 0
    doc = _json_out(capsys)
    assert doc["backend"] == "interval"
    assert doc["result"]["outcome"] == "proved"


def test_prove_creal_backend_alias(capsys):
    assert main(["prove", "pi > 3", "--backend", "creal", "--json"]) == 0
    doc = _json_out(capsys)
    assert doc["backend"] == "approx"


@pytest.mark.parametrize("argv", [
    ["prove", "1 <= 2"],                          # non-strict relation
    ["prove", "1 / sin(pi) < 1"],                 # domain unverifiable
    ["prove", "1 < 2", "--start-eps", "abc"],     # not a rational
    ["prove", "1 < 2", "--start-eps=-1/2"],       # not positive
    ["prove", "1 < 2", "--start-eps", "1/100000", "--max-prec", "8"],
    ["eval", "ln(0 - 1)"],                        # domain violation
    ["eval", "pi", "--digits", "0"],
    ["eval", "1 +"],                              # parse error
])
def test_error_paths_exit_3(capsys, argv):
    assert main(argv) == 3
    assert "error:" in capsys.readouterr().err


def test_usage_errors_exit_3():
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 3
    with pytest.raises(SystemExit) as exc:
        main(["prove", "1 < 2", "--backend", "nope"])
    assert exc.value.code == 3
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 3


# -- eval ------------------------------------------------------------------

def test_eval_prints_certified_digits(capsys):
    assert main(["eval", "exp(1)", "--digits", "20"]) == 0
    out = capsys.readouterr().out.strip()
    # the enclosure radius is far below the tie boundary here, so the
    # rendering is exact
    assert out == "2.71828182845904523536"


def test_eval_pi_prefix(capsys):
    assert main(["eval", "pi"]) == 0
    out = capsys.readouterr().out.strip()
    assert out.startswith("3.1415926535897932384626433832")
    assert len(out) == 2 + 30  # "3." plus thirty fractional digits


def test_eval_keeps_trailing_zeros(capsys):
    assert main(["eval", "1/4", "--digits", "3"]) == 0
    assert capsys.readouterr().out.strip() == "0.250"
    assert main(["eval", "0", "--digits", "10"]) == 0
    assert capsys.readouterr().out.strip() == "0.0000000000"


def test_eval_json_is_schema_valid(capsys):
    assert main(["eval", "sin(1)", "--digits", "12", "--json"]) == 0
    doc = _json_out(capsys)
    assert doc["command"] == "eval"
    assert doc["digits"] == 12
    assert doc["value"].startswith("0.841470984")
    lo = int(doc["enclosure"]["lo"]["m"])
    hi = int(doc["enclosure"]["hi"]["m"])
    assert lo < hi


# -- pi01 ------------------------------------------------------------------

def test_pi01_counterexample_exits_0(capsys):
    assert main(["pi01", "n < 20"]) == 0
    assert "n = 20" in capsys.readouterr().out


def test_pi01_tautology_exits_2(capsys):
    assert main(["pi01", "n >= 0", "--max-prec", "64"]) == 2
    assert "not a proof" in capsys.readouterr().out


def test_pi01_json_both_outcomes(capsys):
    assert main(["pi01", "n != 7", "--json"]) == 0
    doc = _json_out(capsys)
    assert doc["result"]["outcome"] == "counterexample"
    assert doc["result"]["n"] == 7

    assert main(["pi01", "0 = 0", "--max-prec", "64", "--json"]) == 2
    doc = _json_out(capsys)
    assert doc["result"]["outcome"] == "no_counterexample_below_bound"
    assert doc["result"]["max_precision"] == 64


def test_pi01_bad_predicate_exits_3(capsys):
    assert main(["pi01", "m < 3"]) == 3
    assert "error:" in capsys.readouterr().err


# -- selftest --------------------------------------------------------------

def test_selftest_quick(capsys):
    assert main(["selftest", "--quick"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_selftest_quick_json(capsys):
    assert main(["selftest", "--quick", "--json"]) == 0
    doc = _json_out(capsys)
    assert doc["passed"] is True
    assert doc["failed"] == 0
    assert doc["total"] > 0


def test_selftest_prec_list(capsys):
    assert main(["selftest", "--quick", "--prec-list", "4,12", "--json"]) == 0
    doc = _json_out(capsys)
    assert doc["passed"] is True
    assert main(["selftest", "--prec-list", "nope"]) == 3
    assert "error:" in capsys.readouterr().err


def test_selftest_run_validates_precisions():
    from certreal import selftest
    with pytest.raises(ValueError):
        selftest.run(precisions=())
    with pytest.raises(ValueError):
        selftest.run(precisions=(4, -1))


# -- installed entry point -------------------------------------------------

@pytest.mark.skipif(shutil.which("certreal") is None,
                    reason="console script not on PATH")
def test_console_script_runs():
    proc = subprocess.run(["certreal", "prove", "sin(1) < 1"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "Proved" in proc.stdout
