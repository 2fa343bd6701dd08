import json

import pytest

from l1coh.cli import EXIT_BUDGET, EXIT_OK, EXIT_PARSE, ParseError, main, parse_inputs
from l1coh.cochain import e


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_parse_inputs():
    xs = parse_inputs("e1^2,-e2,1/2e1,g2+")
    assert xs[:3] == [e(1), e(1), -e(2)]
    assert xs[3] == e(1).scale(__import__("fractions").Fraction(1, 2))
    assert xs[4].degree == 2
    for bad in ("e3,e1", "x1,e2", "e1", "0e1,e2"):
        with pytest.raises(ParseError):
            parse_inputs(bad)


def test_betti_json(capsys):
    code, out = run(capsys, "--format", "json", "betti", "--qmax", "2", "--wmax", "8")
    assert code == EXIT_OK
    doc = json.loads(out.out)
    assert doc["command"] == "betti" and doc["deterministic"] is True
    assert doc["payload"]["cells"] == [[1, 1, 1], [1, 2, 1], [2, 5, 1], [2, 7, 1]]


def test_betti_budget_guard(capsys):
    code, _ = run(capsys, "betti", "--qmax", "6")
    assert code == EXIT_BUDGET


def test_massey_table(capsys):
    code, out = run(capsys, "massey", "e1,e2,e2")
    assert code == EXIT_OK
    assert "point ['3']" in out.out and "trivial=False" in out.out


def test_massey_json_fraction_strings(capsys):
    code, out = run(capsys, "--format", "json", "massey", "e1^2,e2,e1,g2+")
    doc = json.loads(out.out)["payload"]
    assert doc["point"] == ["-336/55"]
    assert doc["rigidity"]["single_valued"] is True
    assert doc["spectral"]["page"] == 5


def test_parse_error_exit_code(capsys):
    code, out = run(capsys, "massey", "e7,e1")
    assert code == EXIT_PARSE and "parse error" in out.err
    assert run(capsys, "nonsense")[0] == EXIT_PARSE


def test_singular(capsys):
    code, out = run(capsys, "singular", "--p", "2", "--q", "1", "--t=-3/2")
    assert code == EXIT_OK and "closed formula agrees: True" in out.out


def test_verify_budget(capsys):
    code, _ = run(capsys, "--budget-seconds", "0", "verify", "all")
    assert code == EXIT_BUDGET


def test_verify_suite(capsys):
    code, out = run(capsys, "verify", "thread")
    assert code == EXIT_OK and out.out.count("[PASS]") == 3
