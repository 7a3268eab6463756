import json
import shutil
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from equimult.cli import EXIT_INPUT, EXIT_LIMIT, EXIT_MISMATCH, EXIT_OK, main
from equimult.report import load_schema, strip_timings

CUBIC = "F: x^3 + y^3 + t*x^2"
BS = "F: x^5 + z^15 + y^7*z + t*x*y^6"
# Milnor number over QQ(t) of this family takes several seconds
SLOW = ("F: -2*x^8*y^2*z^5*t^2 + x^4*y^5*z^5*t^3 - 3*x^5*y^3*z^3 - 3*x*y^6*z^2*t^2"
        " + x^6*y^2 + x^5*y^2*t - 2*x^2*y*z*t^3 + x^5 + 2*z^4 + 2*y^3")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_OK, err
    return json.loads(out)


def test_analyze_report_validates(capsys):
    report = run_json(capsys, "analyze", CUBIC)
    jsonschema.validate(report, load_schema())
    assert report["summary"]["bounds"] == "VIOLATION"
    assert report["mu"]["mu_at_0"] == 4 and report["mu"]["mu_generic"] == 2
    kinds = {c["kind"] for c in report["certificates"]}
    assert {"BoundViolation", "NonMuConstant"} <= kinds


def test_analyze_is_deterministic(capsys):
    a = run_json(capsys, "analyze", BS, "--seed", "4")
    b = run_json(capsys, "analyze", BS, "--seed", "4")
    assert strip_timings(a) == strip_timings(b)
    assert a["mu"]["mu_at_0"] == a["mu"]["mu_generic"] == 364


def test_analyze_pretty(capsys):
    code, out, _ = run(capsys, "analyze", CUBIC, "--pretty")
    assert code == EXIT_OK
    assert out.splitlines()[0].startswith("family")


def test_mu_and_samples(capsys):
    out = run_json(capsys, "mu", "F: x^4 + y^4 + t*x^2*y^2", "--mu-samples", "3,1/3")
    assert out["constant"] and set(out["samples"]) == {"3", "1/3"}
    out = run_json(capsys, "mu", "F: x^4 + y^4 + t*x^2*y^2", "--no-generic", "--mu-samples", "1")
    assert out["mu_generic"] == "undefined"


def test_mult_cone_bounds(capsys):
    mult = run_json(capsys, "mult", CUBIC)
    assert (mult["m"], mult["m1"], mult["generic"]) == (3, 2, 2)
    cone = run_json(capsys, "cone", "f: x^2*y + y^4\ng[2]: y^4")
    assert cone["isolated"] is False
    bounds = run_json(capsys, "check-bounds", CUBIC)
    assert bounds["all_pass"] is False


def test_greuel_and_regroup(capsys):
    text = "f: x^3 + y^3\nlambda[1]: t\ng[1]: x*y + x^2*y\nlambda[2]: t\ng[2]: -x*y + x*y^2"
    g = run_json(capsys, "check-greuel", text)
    assert g["verdict"] == "NotApplicable"
    r = run_json(capsys, "regroup", text)
    assert r["g"] == {"1": "x^2*y + x*y^2"}


def test_check_greuel_needs_lambda_form(capsys):
    code, _, err = run(capsys, "check-greuel", CUBIC)
    assert code == EXIT_INPUT and "lambda" in err


def test_check_equimult(capsys):
    v = run_json(capsys, "check-equimult", "f: x^2*y + y^4\ng[2]: y^4")
    assert v["verdict"] == "Equimultiple" and v["citation"] == "cone-locus-avoids-h"
    v = run_json(capsys, "check-equimult", "f: x^2*y + y^4\ng[2]: y^2", "--assume-mu-constant")
    assert v["verdict"] == "Equimultiple" and v["conditional_on_mu_constancy"]


def test_probe_arcs(capsys):
    out = run_json(capsys, "probe-arcs", CUBIC)
    assert out["certificate"]["gap"] <= 0
    arc = '{"z": [["0","1"],["0","1"]], "t": ["0"]}'
    assert run_json(capsys, "probe-arcs", CUBIC, "--arc", arc)["gap"] == 0
    code, _, err = run(capsys, "probe-arcs", CUBIC, "--arc", '{"z": [["0","1"]], "t": []}')
    assert code == EXIT_INPUT


def test_file_and_stdin_input(capsys, tmp_path, monkeypatch):
    path = tmp_path / "fam.germ"
    path.write_text("vars: x, y\nf: x^3 + y^3\ng[1]: x^2\n")
    assert run_json(capsys, "mult", str(path))["m1"] == 2
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(CUBIC))
    assert run_json(capsys, "mult", "-")["m"] == 3


@pytest.mark.parametrize("argv", [
    ("analyze", "F: x^3 + y^"),
    ("analyze", "no-such-file.germ"),
    ("mu", "F: x^2*y + t*y^4"),
    ("mult", "F: 1 + x^2"),
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert err.startswith("error:")


def test_parse_error_reports_position(capsys):
    code, _, err = run(capsys, "analyze", "vars: x, y\nf: x^2\ng[1]: x*(y")
    assert code == EXIT_INPUT and "line 3" in err


def test_time_cap_exits_3(capsys):
    code, _, err = run(capsys, "mu", SLOW, "--time-cap", "1")
    assert code == EXIT_LIMIT and err.startswith("limit:")


def test_corpus_list_and_run(capsys):
    listing = run_json(capsys, "corpus", "list")
    names = {e["file"] for e in listing["entries"]}
    assert "brianconspeder.germ" in names
    result = run_json(capsys, "corpus", "run")
    assert result["mismatches"] == 0
    assert all(r["match"] for r in result["results"])


def _corpus_copy(tmp_path: Path) -> Path:
    src = Path(str(resources.files("equimult").joinpath("corpus")))
    dst = tmp_path / "corpus"
    shutil.copytree(src, dst)
    return dst


def test_tampered_corpus_exits_1(capsys, tmp_path):
    d = _corpus_copy(tmp_path)
    for p in d.glob("*.germ"):
        if p.name != "cubic-tx2.germ":
            p.unlink()
    path = d / "cubic-tx2.germ"
    path.write_text(path.read_text().replace("expect.mu0: 4", "expect.mu0: 5"))
    code, out, _ = run(capsys, "corpus", "run", "--dir", str(d))
    assert code == EXIT_MISMATCH
    bad = [r for r in json.loads(out)["results"] if not r["match"]]
    assert [(r["key"], r["expected"], r["computed"]) for r in bad] == [("mu0", "5", "4")]


def test_empty_corpus_dir_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "corpus", "run", "--dir", str(tmp_path))
    assert code == EXIT_INPUT
    code, _, _ = run(capsys, "corpus", "list", "--dir", str(tmp_path / "missing"))
    assert code == EXIT_INPUT


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "equimult.cli", "mult", CUBIC],
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["m"] == 3
