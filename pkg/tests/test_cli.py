from __future__ import annotations

import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from stabloc import io as sio
from stabloc.cli import main
from stabloc.codes import bell, steane
from stabloc.errors import ParseError
from stabloc.pauli import PauliOperator
from stabloc.surface import theta, toric, valence_counterexample

EXAMPLE = "3 2\n+100|001\n+001|010\n"
SUBSTITUTE = "3 2\n+100|001\n+010|001\n"


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "example": EXAMPLE,
        "substitute": SUBSTITUTE,
        "bell": sio.format_check_matrix(2, bell().generators),
        "steane": sio.format_check_matrix(7, steane().generators),
        "bad": "3 2\n*100|001\n+001|010\n",
    }.items():
        p = tmp_path / f"{name}.chk"
        p.write_text(text)
        paths[name] = str(p)
    p = tmp_path / "theta.cel"
    p.write_text(sio.format_cellulation(theta()))
    paths["theta"] = str(p)
    return paths


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# formats


def test_parse_example_file():
    n, gens = sio.parse_check_matrix(EXAMPLE)
    assert n == 3 and [g.label for g in gens] == ["+XIZ", "+IZX"]


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.tuples(st.sampled_from("+-"), st.text("IXYZ", min_size=n, max_size=n)).map("".join), max_size=6).map(lambda ls: (n, ls))))
def test_check_matrix_round_trip(case):
    n, labels = case
    gens = [PauliOperator.from_label(s) for s in labels]
    text = sio.format_check_matrix(n, gens)
    n2, back = sio.parse_check_matrix(text)
    assert n2 == n and back == gens
    assert sio.format_check_matrix(n2, back) == text


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 2\n*100|001\n+001|010\n", 2),
        ("3\n+100|001\n", 1),
        ("3 2\n+100|001\n", 2),
        ("3 1\n+10|001\n", 2),
        ("3 1\n+102|001\n", 2),
        ("", None),
    ],
)
def test_check_matrix_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        sio.parse_check_matrix(text)
    assert info.value.line == line


@pytest.mark.parametrize("c", [theta(), toric(2), toric(3), valence_counterexample()], ids=["theta", "t2", "t3", "ce"])
def test_cellulation_round_trip(c):
    text = sio.format_cellulation(c)
    back = sio.parse_cellulation(text)
    assert back == c
    assert sio.format_cellulation(back) == text


def test_cellulation_parse_errors():
    with pytest.raises(ParseError, match="line 3"):
        sio.parse_cellulation("VERTICES 2\nEDGES\n1 1\n")
    with pytest.raises(ParseError):
        sio.parse_cellulation("EDGES\n1 1 2\n")
    with pytest.raises(ParseError, match="1..2"):
        sio.parse_cellulation("VERTICES 2\nEDGES\n1 1 2\n3 1 2\nFACES\n1 1 2\n")


# commands


def test_delta_example(files, capsys):
    code, out, _ = run(["delta", files["example"]], capsys)
    assert code == 0
    assert "delta = 2" in out and "witness = +XIZ" in out and "subset = {1,3}" in out


def test_delta_steane_oracle(files, capsys):
    code, out, _ = run(["delta", files["steane"], "--oracle"], capsys)
    assert code == 0 and "delta = 4 (oracle agrees)" in out


def test_eta_substitute_json(files, capsys):
    code, out, _ = run(["eta", files["substitute"], "--oracle", "--format", "json"], capsys)
    report = json.loads(out)
    assert code == 0 and report["schema"] == "1"
    assert report["results"]["value"] == 2 and report["results"]["oracle_value"] == 2


def test_parse_error_exit(files, capsys):
    code, _, err = run(["delta", files["bad"]], capsys)
    assert code == 1 and "line 2" in err


def test_eta_on_anticommuting_file(files, capsys):
    code, _, err = run(["eta", files["example"]], capsys)
    assert code == 2 and "anticommute" in err


def test_budget_exit(files, capsys):
    code, _, err = run(["delta", files["steane"], "--budget", "5"], capsys)
    assert code == 2 and "delta >= 1" in err


def test_usage_error_exit(files, capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "theorem1", files["bell"], "--trials", "x"])
    assert info.value.code == 1


def test_surface_toric_emit(tmp_path, capsys):
    out_file = tmp_path / "t3.chk"
    code, out, _ = run(["surface", "toric", "3", "--emit", str(out_file)], capsys)
    assert code == 0 and "n = 18" in out and "q = 4" in out
    G = sio.load_group(out_file)
    assert G.n == 18 and G.codespace_dim == 4
    n, gens = sio.parse_check_matrix(out_file.read_text())
    assert sio.format_check_matrix(n, gens) == out_file.read_text()


def test_surface_counterexample(tmp_path, capsys):
    out_file = tmp_path / "ce.chk"
    code, out, _ = run(["surface", "counterexample", "--emit", str(out_file)], capsys)
    assert code == 0 and "min valence = 3" in out
    code, out, _ = run(["delta", str(out_file)], capsys)
    assert code == 0 and "delta = 2" in out


def test_surface_from_theta(files, capsys):
    code, out, _ = run(["surface", "from", files["theta"], "--format", "json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["results"]["q"] == 1 and rep["results"]["euler_characteristic"] == 2


def test_surface_invalid_cellulation(tmp_path, capsys):
    p = tmp_path / "bad.cel"
    p.write_text("VERTICES 2\nEDGES\n1 1 2\n2 1 2\nFACES\n1 1 2\n")
    code, _, err = run(["surface", "from", str(p)], capsys)
    assert code == 2 and "edge 1" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "theorem1", "{substitute}", "--trials", "50", "--seed", "7"],
        ["verify", "theorem1", "{bell}", "--trials", "10"],
        ["verify", "css", "{steane}"],
        ["verify", "gap-pinch", "{bell}", "--nu", "1", "--trials", "50"],
        ["verify", "gap-pinch", "{substitute}", "--trials", "20"],
        ["verify", "theorem2", "{bell}", "--nu", "1", "--trials", "20"],
        ["verify", "theorem2", "{bell}", "--nu", "1", "--b", "11"],
        ["verify", "corollary3", "{bell}", "--nu", "1"],
    ],
)
def test_verify_passes(argv, files, capsys):
    argv = [a.format(**files) for a in argv]
    code, out, err = run(argv + ["--format", "json"], capsys)
    assert code == 0, err
    rep = json.loads(out)
    assert rep["verdicts"] and all(v["pass"] for v in rep["verdicts"])
    assert all("tolerance" in v for v in rep["verdicts"])


def test_verify_precondition_exits(files, capsys):
    code, _, err = run(["verify", "theorem1", files["example"]], capsys)
    assert code == 2
    code, _, _ = run(["verify", "theorem2", files["bell"], "--nu", "2"], capsys)
    assert code == 2
    code, _, _ = run(["verify", "css", files["substitute"]], capsys)
    assert code == 2


def test_verify_reports_are_deterministic(files, capsys):
    argv = ["verify", "gap-pinch", files["bell"], "--nu", "1", "--trials", "5", "--seed", "3", "--format", "json"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    a, b = json.loads(a), json.loads(b)
    a.pop("timing")
    b.pop("timing")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_console_script_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "stabloc.cli", "delta", files["example"]], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "delta = 2" in proc.stdout
