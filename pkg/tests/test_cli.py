import io
import json
import subprocess
import sys
from importlib import resources

import pytest

from toricgkz import cli
from toricgkz.hypergeo import Tri

DATA = resources.files("toricgkz") / "data"
W8 = str(DATA / "worked_example.txt")
CONIC = str(DATA / "conic.txt")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, text):
    p = tmp_path / "m.txt"
    p.write_text(text)
    return str(p)


@pytest.mark.parametrize("command", ["toric", "stdpairs", "analyze", "exceptional"])
def test_commands_succeed(command):
    code, out, err = run(command, CONIC)
    assert code == 0 and out.startswith("schema: 1") and not err


def test_worked_example_exceptional_text():
    code, out, _ = run("exceptional", W8)
    assert code == 0
    assert "asserted_lower_bound: 9" in out
    assert "beta_line_text: (a, 1, a)" in out


def test_json_round_trip():
    code, out, _ = run("exceptional", W8, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1 and data["asserted_lower_bound"] == 9
    again = io.StringIO()
    cli.emit(data, True, again)
    assert again.getvalue() == out


@pytest.mark.parametrize("command", ["toric", "stdpairs", "analyze", "exceptional"])
def test_text_and_json_share_keys(command):
    _, text, _ = run(command, CONIC)
    _, js, _ = run(command, CONIC, "--json")
    text_keys = {line.split(":")[0] for line in text.splitlines() if line and not line[0].isspace()}
    # the configuration block is JSON-only
    assert text_keys == set(json.loads(js)) - {"configuration"}


def test_output_is_deterministic():
    assert run("exceptional", W8, "--seed", "3")[1] == run("exceptional", W8, "--seed", "3")[1]
    assert "timing_seconds" not in run("toric", CONIC)[1]
    assert "timing_seconds" in run("toric", CONIC, "--timing")[1]


def test_malformed_file_reports_position(tmp_path):
    code, _, err = run("toric", write(tmp_path, "2 3\n1 x 1\n0 1 2\n"))
    assert code == 2
    assert err.strip().endswith(":2:3: not an integer: 'x'")


@pytest.mark.parametrize("text, msg", [
    ("2 3\n1 2 1\n0 1 2\n", "first row must be all ones"),
    ("2 3\n1 1 1\n0 2 4\n", "columns do not generate"),
    ("2 3\n1 1 1\n", "expected 2 matrix rows, found 1"),
])
def test_invalid_matrices(tmp_path, text, msg):
    code, _, err = run("toric", write(tmp_path, text))
    assert code == 2 and msg in err


def test_missing_file():
    assert run("toric", "/nonexistent/file.txt")[0] == 2


def test_cohen_macaulay_has_no_embedded_pair():
    code, out, _ = run("exceptional", CONIC)
    assert code == 0 and "verdict: no embedded pair" in out


def test_series_all():
    code, out, _ = run("series", CONIC, "--beta", "2,2", "--all")
    assert code == 0 and "x1 x3 + 1/2 x2^2  verified=true" in out


def test_series_single_exponent_radius_zero():
    code, out, _ = run("series", W8, "--beta", "1+a,2,a", "--exponent", "0,0,0,1,0,a", "--radius", "0")
    assert code == 0 and "x4 x6^a  verified=true" in out


@pytest.mark.parametrize("argv", [
    ("series", CONIC, "--all"),
    ("series", CONIC, "--beta", "1,2"),
    ("series", CONIC, "--beta", "1,2", "--exponent", "0,1,0"),
    ("series", CONIC, "--beta", "1,2,3", "--all"),
    ("series", CONIC, "--beta", "1,4", "--exponent=-1,2,0"),
    ("series", CONIC, "--beta", "1,2", "--all", "--weight", "0,0,0"),
    ("stdpairs", CONIC, "--weight", "1,2"),
    ("toric", CONIC, "--radius", "-1"),
])
def test_bad_arguments_exit_2(argv):
    assert run(*argv)[0] == 2


def test_invariant_breach_exits_3(monkeypatch):
    monkeypatch.setattr(cli, "verify_solution", lambda *a, **k: False)
    code, _, err = run("series", CONIC, "--beta", "2,2", "--all")
    assert code == 3 and "invariant" in err


def test_strict_turns_warnings_into_exit_4(monkeypatch):
    monkeypatch.setattr(cli, "has_minimal_negative_support", lambda *a, **k: Tri.INCONCLUSIVE)
    argv = ("series", CONIC, "--beta", "2,2", "--exponent", "1,0,1")
    assert run(*argv)[0] == 0
    assert run(*argv, "--strict")[0] == 4


def test_non_generic_weight_is_a_warning():
    code, out, _ = run("stdpairs", CONIC, "--weight", "0,0,0")
    assert code == 0 and "weight is not generic" in out


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "toricgkz", "toric", CONIC], capture_output=True, text=True)
    assert p.returncode == 0 and "d2^2 - d1 d3" in p.stdout


@pytest.mark.parametrize("text, value", [("1+a", "a + 1"), ("3/2a-1", "3a/2 - 1"), ("-a/2", "-a/2"),
                                         ("7/3", "7/3")])
def test_parse_scalar(text, value):
    assert str(cli.parse_scalar(text)) == value
