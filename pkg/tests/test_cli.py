import json
import math
import pathlib
import subprocess
import sys

import pytest

from radix.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"
CYCLOTOMIC_WORD = "H[0,{-1,0},{-1,0},{0,1}; base=1]"
BINOMIAL_SUM = "sum(x^n * inv(n^2*binom(2n,n)) * S(inv(i)))"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# rationalize ----------------------------------------------------------------------


def test_rationalize_cyclotomic_case(capsys):
    code, out, err = run(capsys, "rationalize", "x*(1+x)", "x*(1-x)", "--variant", "real01")
    assert code == 0 and err == ""
    assert "x = g(y) = 2*y^2/(y^4 + 1)" in out


def test_rationalize_obstruction(capsys):
    code, out, _ = run(capsys, "rationalize", "x*(x-1)*(x-2)")
    assert code == 2
    assert "NoTransformation" in out and "x^3 - 3*x^2 + 2*x" in out


def test_rationalize_all_squares(capsys):
    code, out, _ = run(capsys, "rationalize", "x^2")
    assert code == 0 and "Empty" in out


def test_rationalize_ineligible(capsys):
    code, out, err = run(capsys, "rationalize", "x-1/2", "--variant", "real01")
    assert code == 3 and out == ""
    assert "(0,1)" in err


def test_rationalize_parse_error(capsys):
    code, out, err = run(capsys, "rationalize", "x^2 + 1.5")
    assert code == 1 and out == ""
    assert "column 7" in err


def test_rationalize_latex_and_lambda(capsys):
    code, out, _ = run(capsys, "rationalize", "x", "--variant", "real01", "--lambda", "2", "--format", "latex")
    assert code == 0 and "\\frac" in out


def test_rationalize_verify_plain(capsys):
    code, out, _ = run(capsys, "rationalize", "x*(x+2)", "--verify")
    assert code == 0
    assert "verify inverse: pass" in out and "verify puiseux_inverse: pass" in out


# transform-integral --------------------------------------------------------------


def test_transform_cyclotomic_case(capsys):
    code, out, _ = run(capsys, "transform-integral", CYCLOTOMIC_WORD, "--check")
    assert code == 0
    assert "(32*sqrt(2))*H[R((-t^4 + 1)/(t^5 + t))," in out
    assert "check x = 1/2" in out


def test_transform_empty_word(capsys):
    code, out, _ = run(capsys, "transform-integral", "H[; base=0]")
    assert code == 0 and out.strip() == "H[; base=0]"


def test_transform_unrationalized_letter(capsys):
    code, out, err = run(capsys, "transform-integral", "H[{0,4}; base=0]", "--radicands", "x", "--variant", "general")
    assert code == 3 and out == ""
    assert "{0,4}" in err and "not rationalized" in err


def test_transform_obstructed_word(capsys):
    code, _, err = run(capsys, "transform-integral", "H[({-1,0,1},1); base=0]")
    assert code == 2 and "witness" in err


# sum2int -------------------------------------------------------------------------


def test_sum2int_binomial_sum(capsys):
    code, out, _ = run(capsys, "sum2int", BINOMIAL_SUM, "--check-series", "200", "--x", "1/5")
    assert code == 0
    assert out.splitlines()[0] == "H[0,{0,4},{0,4}; base=0] + H[{0,4},4,{0,4}; base=0]"


def test_sum2int_delta(capsys):
    code, out, _ = run(capsys, "sum2int", "sum(x^n * delta(1,n))")
    assert code == 0 and out.strip() == "x"


def test_sum2int_unsupported(capsys):
    code, out, err = run(capsys, "sum2int", "sum(x^n * inv(n) * S(inv(i)))")
    assert code == 4 and out == ""
    assert "S(inv(i))" in err


# eval ------------------------------------------------------------------------------


def test_eval_examples(capsys):
    code, out, _ = run(capsys, "eval", "H[{0,4}; base=0]", "1")
    assert code == 0 and abs(float(out) - math.pi / 3) < 1e-10
    code, out, _ = run(capsys, "eval", "H[-1; base=0]", "1/2")
    assert code == 0 and abs(float(out) - math.log(1.5)) < 1e-10


def test_eval_divergent(capsys):
    code, out, err = run(capsys, "eval", "H[0; base=0]", "1/2")
    assert code == 5 and out == "" and "diverges" in err


def test_eval_rejects_decimals(capsys):
    code, _, _ = run(capsys, "eval", "H[-1; base=0]", "0.5")
    assert code == 1


def test_precision_environment(capsys, monkeypatch):
    monkeypatch.setenv("RADIX_PRECISION", "1e-6")
    code, out, _ = run(capsys, "eval", "H[-1; base=0]", "1/2", "--format", "json")
    assert code == 0 and json.loads(out)["tol"] == 1e-6
    monkeypatch.setenv("RADIX_PRECISION", "tight")
    code, _, err = run(capsys, "eval", "H[-1; base=0]", "1/2")
    assert code == 1 and "RADIX_PRECISION" in err


# golden files -------------------------------------------------------------------


def _same(got, want, path="$"):
    if isinstance(want, dict):
        assert isinstance(got, dict) and got.keys() == want.keys(), path
        for k in want:
            if k in ("difference", "max_error"):
                assert got[k] <= 1e-8, f"{path}.{k}"
            else:
                _same(got[k], want[k], f"{path}.{k}")
    elif isinstance(want, list):
        assert isinstance(got, list) and len(got) == len(want), path
        for i, (a, b) in enumerate(zip(got, want)):
            _same(a, b, f"{path}[{i}]")
    elif isinstance(want, float):
        assert math.isclose(got, want, rel_tol=1e-9, abs_tol=1e-12), path
    elif isinstance(want, str) and _floaty(want):
        # float rendered as text: allow last-digit jitter
        assert math.isclose(float(got), float(want), rel_tol=1e-12, abs_tol=1e-15), path
    else:
        assert got == want, path


def _floaty(s):
    try:
        float(s)
    except ValueError:
        return False
    return "." in s or "e" in s


CASES = json.loads((GOLDEN / "cases.json").read_text())


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_json(name, capsys):
    code, out, _ = run(capsys, *CASES[name])
    got = json.loads(out)
    assert got["schema"] == 1
    _same(got, json.loads((GOLDEN / f"{name}.json").read_text()))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "radix.cli", "eval", "H[-1; base=0]", "1/2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert abs(float(proc.stdout) - math.log(1.5)) < 1e-10
