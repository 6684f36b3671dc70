import csv
import json
import random

import jsonschema
import pytest

from ppinv.cli import main
from ppinv.dickson import hou_pp
from ppinv.gf import FieldCtx
from ppinv.parse import MAX_EXPONENT_DIGITS, PolyParseError, parse_poly
from ppinv.polyring import Poly, monomial, render, x

from schemas import BY_COMMAND


# -- parser ---------------------------------------------------------------------

def test_parse_examples(gf9):
    assert parse_poly("x^3 + 2*x + 1", gf9).indices == (1, 2, 0, 1)
    assert parse_poly("g^4", gf9) == Poly(gf9, [2])
    assert parse_poly("x^9", gf9) == x(gf9)


def test_parse_literals_and_signs(gf9):
    assert parse_poly("-x", gf9) == monomial(gf9, 1, 2)
    assert parse_poly("x − x", gf9).is_zero
    assert parse_poly("[1,1]*x^2", gf9) == monomial(gf9, 2, 4)
    assert parse_poly("g^-1*x", gf9) == monomial(gf9, 1, gf9.xi.inverse().index)
    assert parse_poly("  x ^ 2 +x", gf9) == Poly(gf9, [0, 1, 1])
    big = "1" + "0" * 30
    assert parse_poly(f"x^{big}", gf9) == monomial(gf9, (int(big) - 1) % 8 + 1)


@pytest.mark.parametrize("text, pos", [
    ("x^", 2),
    ("x +", 3),
    ("2 x", 2),
    ("x^3 ++ x", 5),
    ("y", 0),
    ("[1,2", 4),
])
def test_parse_errors_report_position(gf9, text, pos):
    with pytest.raises(PolyParseError) as info:
        parse_poly(text, gf9)
    assert info.value.pos == pos


def test_parse_error_kinds(gf9):
    with pytest.raises(PolyParseError, match="out of field"):
        parse_poly("9*x", gf9)
    with pytest.raises(PolyParseError, match="overflow"):
        parse_poly("x^" + "9" * (MAX_EXPONENT_DIGITS + 1), gf9)
    with pytest.raises(PolyParseError, match="empty"):
        parse_poly("   ", gf9)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_render_parse_roundtrip(n):
    ctx = FieldCtx(3, n)
    rng = random.Random(n)
    for _ in range(20):
        f = Poly(ctx, [rng.randrange(ctx.q) if rng.random() < 0.3 else 0
                       for _ in range(ctx.q)])
        assert parse_poly(render(f), ctx) == f


# -- command line ---------------------------------------------------------------

def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, BY_COMMAND[doc["command"]])
    return code, doc


def test_pp_invert_hou_closed_form(capsys, gf9):
    text = render(hou_pp(gf9))
    code, doc = run_json(capsys, "pp", "invert", "--spec", "3^2", "--poly", text,
                         "--method", "closed-form")
    assert code == 0
    code2, doc2 = run_json(capsys, "pp", "invert", "--spec", "3^2", "--poly", text,
                           "--method", "oracle")
    assert doc["inverse"] == doc2["inverse"]
    assert doc["field"] == {"p": 3, "n": 2, "modulus": [1, 0, 1]}


def test_pp_invert_all_methods_agree(capsys):
    code, doc = run_json(capsys, "pp", "invert", "--spec", "3^4",
                         "--f0=-x^3", "--f1=x^3 + 2*x^2 + x", "--method", "all")
    assert code == 0
    assert doc["agree"] and doc["verified"]
    assert set(doc["methods"]) == {"oracle", "theorem2", "closed-form"}
    assert len({tuple(v) for v in doc["methods"].values()}) == 1


def test_pp_piecewise_alias(capsys):
    code, doc = run_json(capsys, "pp", "invert", "--spec", "3^3", "--poly", "x^5",
                         "--method", "piecewise")
    assert code == 0 and list(doc["methods"]) == ["theorem2"]


def test_pp_not_permutation(capsys):
    code, doc = run_json(capsys, "pp", "invert", "--spec", "3^2", "--poly", "x^2")
    assert code == 1
    assert doc["is_pp"] is False and doc["inverse"] is None
    code, doc = run_json(capsys, "pp", "check", "--spec", "3^2", "--poly", "x^2")
    assert code == 1


def test_pp_table_csv(capsys, tmp_path):
    path = tmp_path / "table.csv"
    code, _, _ = run(capsys, "pp", "table", "--spec", "3^2", "--poly", "x^3",
                     "--csv", str(path))
    assert code == 0
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "f(x)", "finv(f(x))"]
    assert len(rows) == 10
    assert all(r[0] == r[2] for r in rows[1:])


def test_cyclo_check_failing_gamma(capsys):
    # gamma = 1 is a square
    code, doc = run_json(capsys, "cyclo", "check", "--family", "l5", "--spec", "3^2",
                         "--alpha", "1", "--beta", "1", "--gamma", "1", "--theta", "1")
    assert code == 1
    assert doc["reason"] == "η(γ) ≠ −1"


def test_cyclo_invert_and_build(capsys):
    args = ["--family", "l7", "--spec", "3^3", "--alpha", "1", "--beta", "1",
            "--gamma", "g", "--t", "5"]
    code, doc = run_json(capsys, "cyclo", "invert", *args)
    assert code == 0 and doc["verified"]
    code, doc = run_json(capsys, "cyclo", "build", *args)
    assert code == 0 and doc["is_pp"]


def test_cyclo_sweep(capsys):
    code, doc = run_json(capsys, "cyclo", "sweep", "--family", "l6", "--spec", "3^2",
                         "--samples", "5", "--seed", "2")
    assert code == 0 and doc["agree"] and doc["sampled"] == 5


def test_dickson_invert(capsys):
    code, doc = run_json(capsys, "dickson", "--spec", "3^2", "--index", "14", "--invert")
    assert code == 0 and doc["agree"] and doc["is_pp"]


def test_field_and_binom(capsys):
    code, doc = run_json(capsys, "field", "--spec", "3^2", "--element", "g")
    assert code == 0 and doc["element"]["eta"] == -1
    code, doc = run_json(capsys, "binom", "residue", "12", "3")
    assert doc["residue"] == 1
    code, doc = run_json(capsys, "binom", "support", "3")
    assert code == 0 and doc["agree"]


def test_selftest_quick(capsys):
    code, doc = run_json(capsys, "selftest", "--level", "quick")
    assert code == 0 and doc["passed"]
    assert len(doc["checks"]) == 10


@pytest.mark.parametrize("argv", [
    ["pp", "invert", "--spec", "3^2", "--poly", "x^"],
    ["pp", "invert", "--spec", "3^2:2,0,1", "--poly", "x"],
    ["pp", "invert", "--spec", "3^2"],
    ["pp", "invert", "--spec", "3^2", "--poly", "x", "--f0", "x", "--f1", "x"],
    ["pp", "invert", "--spec", "3^2", "--f0", "1", "--f1", "x"],
    ["field", "--spec", "4^1"],
    ["field", "--spec", "3^2", "--element", "[5]"],
    ["cyclo", "invert", "--family", "l6", "--spec", "3^2", "--alpha", "1", "--beta", "1"],
    ["cyclo", "check", "--family", "l5", "--spec", "3^2", "--alpha", "0", "--beta", "1",
     "--gamma", "1", "--theta", "1"],
    ["dickson", "--spec", "3^2", "--index", "0"],
    ["pp", "invert", "--spec", "3^2", "--poly", "x^5", "--method", "closed-form"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("ppinv: error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["pp", "frobnicate", "--spec", "3^2"])
    assert info.value.code == 2


def test_human_output(capsys):
    code, out, _ = run(capsys, "pp", "invert", "--spec", "3^2", "--poly", "x^3")
    assert code == 0
    assert "inverse: [0, 0, 0, 1]" in out
    assert "inverse_text: x^3" in out
