import json
import subprocess
import sys
from pathlib import Path

import pytest

from fibercone import cli
from fibercone.errors import ParseError

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
CM = CORPUS / "cm_example.txt"
NC = CORPUS / "non_cm_example.txt"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def machine(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "machine")
    assert code == 0, err
    return json.loads(out)


def job_file(tmp_path, text, name="job.txt"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_verify_cm(capsys):
    rep = machine(capsys, "verify", CM)
    assert rep["schema"] == 1
    assert (rep["lhs"], rep["rhs"], rep["is_CM"], rep["a_equals_kernel"]) == (5, 5, True, True)


def test_verify_non_cm(capsys):
    rep = machine(capsys, "verify", NC)
    assert (rep["is_CM"], rep["depth_zero"], rep["a_equals_kernel"]) == (False, True, False)
    assert rep["u"] == [3, 2, 2]


def test_analyze_trivial(capsys, tmp_path):
    path = job_file(tmp_path, "vars: x, y\nI: x, y\nQ: indices 1, 2\n")
    rep = machine(capsys, "analyze", path)
    assert rep["r"] == 0 and rep["u"] == []


def test_other_commands(capsys):
    rep = machine(capsys, "defining-ideal", CM)
    assert rep["min_gens"] == {"2": [[4, 4]]}
    assert {"multiset": [3, 3], "poly": "-X1*X3 + X3^2"}.items() <= rep["relations"][0].items()
    rep = machine(capsys, "oracle", NC)
    assert "X1*X3" in rep["kernel_generators"]
    rep = machine(capsys, "hilbert", CM, "--degree-bound", 4)
    assert rep["oracle"] == rep["local"] == [1, 5, 10, 15, 20]
    rep = machine(capsys, "membership-gap", CM, "--power", 3)
    assert rep["witnesses"] and rep["local_equality"] and not rep["polynomial_equality"]
    rep = machine(capsys, "find-reduction", NC, "--seed", 2)
    assert rep["seed"] == 2 and len(rep["q_generators"]) == 2


def test_round_trip_and_determinism(capsys):
    _, first, _ = run(capsys, "verify", NC, "--format", "machine")
    _, second, _ = run(capsys, "verify", NC, "--format", "machine")
    assert first == second
    assert json.dumps(json.loads(first), indent=2) + "\n" == first


def test_text_format(capsys):
    code, out, _ = run(capsys, "analyze", CM)
    assert code == 0
    assert "r: 2" in out and "u: [3, 1]" in out and "vars: [x, y]" in out


def test_field_override(capsys):
    rep = machine(capsys, "analyze", CM, "--field", "Fp 32003")
    assert rep["field"] == "GF(32003)" and rep["r"] == 2


def test_autocomplete_job(capsys, tmp_path):
    path = job_file(tmp_path, "vars: x, y\nI: x^7, x^5*y, x^4*y^2, x^2*y^6, y^12\n"
                              "Q: x^7 + x^4*y^2 + y^12, x^5*y + x^2*y^6\nmode: autocomplete\n")
    rep = machine(capsys, "analyze", path)
    assert rep["q_positions"] == [1, 2] and rep["r"] == 2


@pytest.mark.parametrize("text,code", [
    ("vars: x, y\nI: x, z\nQ: indices 1, 2\n", 2),  # unknown variable
    ("vars: x, y\nI: x, y\n", 2),  # missing Q
    ("vars: x, y\nI: x, y\nQ: indices 1, 3\n", 2),
    ("vars: x, y\nI: x^2, y^2, x*y, x^2\nQ: indices 1, 2\n", 2),  # not minimal
    ("vars: x, y\nI: x^2, x*y\nQ: indices 1, 2\ncap: socle=5\n", 3),  # cap decides
    ("vars: x, y\nI: x^2, x*y, y^2\nQ: indices 1, 2\ncap: power=2\n", 3),
    ("field: Fp 2\nvars: x, y\nI: 1/2*x, y\nQ: indices 1, 2\n", 2),
    ("colour: blue\n", 2),
])
def test_exit_codes(capsys, tmp_path, text, code):
    got, _, err = run(capsys, "analyze", job_file(tmp_path, text))
    assert got == code
    assert err.startswith("error:")


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "analyze", tmp_path / "nope.txt")[0] == 2


def test_theorem_violation_exit_code(capsys, monkeypatch):
    import fibercone.pipeline as pl
    monkeypatch.setattr(pl, "fiber_colength_rhs", lambda ladder: 99)
    assert run(capsys, "verify", CM)[0] == 4


def test_parse_job_details():
    job = cli.parse_job("# comment\nfield: GF(7)\nvars: a b\nI: a^2, b^2 # trailing\n"
                        "Q: indices 1,2\ncap: power=4, socle=9\nseed: 5\n")
    assert job.vars == ("a", "b") and job.I == ("a^2", "b^2")
    assert (job.power_cap, job.socle_cap, job.seed, job.Q_indices) == (4, 9, 5, (1, 2))
    with pytest.raises(ParseError):
        cli.parse_job("vars: x\nvars: y\nI: x\n")
    with pytest.raises(ParseError):
        cli.parse_job("vars: x\nI: x\nmode: lazy\n")


def test_console_script_module():
    proc = subprocess.run([sys.executable, "-m", "fibercone.cli", "analyze", str(CM)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "socle_bound: 13" in proc.stdout
