import json
from fractions import Fraction

import pytest

from cohft.algebra.serialize import from_json
from cohft.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rmatrix_is_deterministic(capsys):
    args = ("rmatrix", "--m", "2", "--z-order", "2")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first[0] == 0 and first == second
    payload = json.loads(first[1])
    assert payload["frame"] == "hat" and len(payload["coefficients"]) == 3


def test_rmatrix_z_order_zero_is_identity(capsys):
    code, out, _ = run(capsys, "rmatrix", "--m", "1", "--z-order", "0")
    assert code == 0
    (mat,) = json.loads(out)["coefficients"]
    assert [[from_json(x) == (i == j) for j, x in enumerate(row)] for i, row in enumerate(mat)] == [[True, True], [True, True]]


def test_rmatrix_text(capsys):
    code, out, _ = run(capsys, "rmatrix", "--m", "1", "--z-order", "1", "--format", "text")
    assert code == 0
    assert "(1/48)/(Q0^3)  |  (1/8)/(Q0^3)" in out


def test_p_side_at_q_order_zero_is_bernoulli(capsys):
    code, out, _ = run(capsys, "rmatrix", "--side", "P", "--m", "1", "--lambdas", "0,1", "--q-order", "0", "--z-order", "2")
    assert code == 0
    coeffs = json.loads(out)["coefficients"]
    # diag entries of the z^1 and z^2 terms, constant in q
    z1 = [from_json(coeffs[1][i][i]).coeffs for i in range(2)]
    z2 = [from_json(coeffs[2][i][i]).coeffs for i in range(2)]
    assert z1 == [[Fraction(1, 12)], [Fraction(-1, 12)]]
    assert z2 == [[Fraction(1, 288)], [Fraction(1, 288)]]
    assert from_json(coeffs[1][0][1]).coeffs == [0]


def test_saddle_construction_matches_qde(capsys):
    qde = run(capsys, "rmatrix", "--m", "1", "--z-order", "3")[1]
    saddle = run(capsys, "rmatrix", "--m", "1", "--z-order", "3", "--construction", "saddle")[1]
    assert json.loads(qde)["coefficients"] == json.loads(saddle)["coefficients"]


def test_graphs(capsys, tmp_path):
    target = tmp_path / "graphs.json"
    code, out, _ = run(capsys, "graphs", "--g", "1", "--n", "1", "--output", str(target))
    assert code == 0 and out == ""
    payload = json.loads(target.read_text())
    assert payload["count"] == 2
    assert sorted(x["automorphisms"] for x in payload["graphs"]) == [1, 2]


def test_relations_genus_one(capsys):
    code, out, _ = run(capsys, "relations", "--theory", "3spin", "--g", "1", "--n", "1", "--codim", "1")
    assert code == 0
    (rel,) = json.loads(out)["relations"]
    assert rel["inputs"] == [1]
    assert rel["coefficients"] == {"g0|L0^0|E0^0-0^0|K": "-1/12", "g1|L0^0|E|K1": "5/6", "g1|L0^1|E|K": "7/6"}


def test_relations_empty_cases(capsys):
    code, out, _ = run(capsys, "relations", "--g", "1", "--n", "1", "--codim", "1", "--r-matrix", "identity")
    assert code == 0 and json.loads(out)["relations"] == []
    code, out, _ = run(capsys, "relations", "--g", "0", "--n", "3", "--codim", "0")
    assert code == 0 and json.loads(out)["relations"] == []


@pytest.mark.parametrize(
    "argv",
    [
        ("graphs", "--g", "0", "--n", "2"),
        ("relations", "--g", "0", "--n", "1", "--codim", "0"),
        ("rmatrix", "--z-order", "-1"),
        ("rmatrix", "--m", "2", "--t", "0,0"),
        ("rmatrix", "--t", "abc"),
        ("relations", "--g", "1", "--n", "1", "--codim", "1", "--inputs", "5"),
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_verify_obstruction(capsys):
    code, out, _ = run(capsys, "verify", "obstruction", "--format", "text")
    assert code == 0
    assert out.rstrip().endswith("all checks passed")


def test_verify_thm_for_m1(capsys):
    code, out, _ = run(capsys, "verify", "thm1", "thm2", "--m", "1")
    payload = json.loads(out)
    assert code == 0 and payload["pass"] is True
    assert all("seconds" not in rep for rep in payload["reports"])
