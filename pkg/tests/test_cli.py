import json
from io import StringIO
from pathlib import Path

import pytest

from twiststar.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, VERBS, run
from twiststar.formats import hopf_from_json, lie_from_json, r_from_json
from twiststar.hopf import deform_hopf, dihedral8, dihedral8_twist
from twiststar.liealg import two_dim

DATA = Path(__file__).resolve().parent.parent / "data"


def d(name: str) -> str:
    return str(DATA / name)


def call(*argv):
    out, err = StringIO(), StringIO()
    code = run([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--json")
    return code, json.loads(out)


# one successful invocation per verb, with the exit code the inputs should produce
CASES = {
    "check-jacobi": ([d("heisenberg.json")], EXIT_OK),
    "killing": ([d("sl2.json")], EXIT_OK),
    "semisimple": ([d("so3.json")], EXIT_OK),
    "cohomology": ([d("so3.json")], EXIT_OK),
    "cobracket": ([d("sl2.json"), d("r_sl2_ef.json")], EXIT_OK),
    "cocycle": ([d("sl2.json"), d("r_sl2_ef.json")], EXIT_OK),
    "cojacobi": ([d("sl2.json"), d("r_sl2_ef.json")], EXIT_OK),
    "dual": ([d("twodim.json"), d("r_twodim.json")], EXIT_OK),
    "cybe": ([d("sl2.json"), d("r_sl2_ef.json")], EXIT_FAILED),
    "classify": ([d("heisenberg.json"), d("r_heisenberg_xz.json")], EXIT_OK),
    "es-subalgebra": ([d("twodim.json"), d("r_twodim.json")], EXIT_OK),
    "pushforward": ([d("twodim.json"), d("twodim.json"), d("phi_twodim_rescale.json"), d("r_twodim.json")], EXIT_OK),
    "cartan": ([d("sl2r.json")], EXIT_OK),
    "iwasawa": ([d("so13.json")], EXIT_OK),
    "hopf-check": ([d("klein4.json")], EXIT_OK),
    "twist-check": ([d("klein4.json"), d("klein4_twist.json")], EXIT_OK),
    "twist-deform": ([d("dihedral8.json"), d("dihedral8_twist.json")], EXIT_OK),
    "twist-module": ([d("klein4.json"), d("klein4_twist.json")], EXIT_OK),
    "moyal": (["--order", "2"], EXIT_OK),
    "star": (["--expr", "x1", "--expr", "x2"], EXIT_OK),
    "assoc": (["--expr", "x1", "--expr", "x2", "--expr", "x1*x2"], EXIT_OK),
    "extract-r": ([], EXIT_OK),
    "poisson-check": (["--expr", "x1^2", "--expr", "x2"], EXIT_OK),
    "euler": (["--genus", "3"], EXIT_OK),
    "surface": (["--genus", "1"], EXIT_OK),
    "obstruct": ([d("twodim.json"), d("r_twodim.json")], EXIT_OK),
}


def test_every_verb_has_a_case():
    assert set(CASES) == set(VERBS)


@pytest.mark.parametrize("verb", sorted(CASES))
def test_verb_text_and_json(verb):
    args, expected = CASES[verb]
    code, out, err = call(verb, *args)
    assert code == expected, err
    assert out.strip() and not err
    code, doc = call_json(verb, *args)
    assert code == expected
    assert doc["verb"] == verb and doc["passed"] == (expected == EXIT_OK)


def test_obstruct_two_dim():
    code, out, _ = call("obstruct", d("twodim.json"), d("r_twodim.json"))
    assert code == EXIT_OK
    assert out.splitlines()[0] == "exists twist star product: undetermined"
    assert out.rstrip().endswith("no contradiction flag")


def test_surface_genus_two():
    code, out, _ = call("surface", "--genus", "2")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "exists twist star product: no"
    assert "χ(T(g)) = 2 − 2g" in out


def test_cybe_output():
    code, out, _ = call("cybe", d("sl2.json"), d("r_sl2_ef.json"))
    assert code == EXIT_FAILED
    assert "6 nonzero components" in out
    code, out, _ = call("cybe", d("sl2.json"), d("r_sl2_he.json"))
    assert code == EXIT_OK and out.strip() == "CYB(r) = 0"


def test_star_output():
    code, out, _ = call("star", "--expr", "x1", "--expr", "x2", "--order", "2")
    assert code == EXIT_OK
    assert out.splitlines()[1:3] == ["  hbar^0: x1*x2", "  hbar^1: 1*i"]


def test_euler_json():
    assert call_json("euler", "--genus", "0") == (EXIT_OK, {"verb": "euler", "passed": True,
                                                            "genus": 0, "euler_characteristic": 2})


def test_failed_check_exit_one(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 3, "brackets": [{"left": 0, "right": 1, "result": {"2": "1"}},
                                                      {"left": 1, "right": 2, "result": {"1": "1"}}]}))
    code, out, _ = call("check-jacobi", bad)
    assert code == EXIT_FAILED and "violated" in out
    non_twist = tmp_path / "f.json"
    non_twist.write_text(json.dumps({"F": ["2"] + ["0"] * 15}))
    code, out, _ = call("twist-check", d("klein4.json"), non_twist)
    assert code == EXIT_FAILED and "FAIL" in out


def test_non_homomorphism(tmp_path):
    phi = tmp_path / "phi.json"
    phi.write_text(json.dumps({"matrix": [["1", "0"], ["0", "2"]]}))
    code, out, _ = call("pushforward", d("twodim.json"), d("twodim.json"), phi, d("r_twodim.json"))
    assert code == EXIT_FAILED and "witness pair (0, 1)" in out


@pytest.mark.parametrize("argv", [
    ["no-such-verb"],
    ["killing", "/nonexistent/alg.json"],
    ["star", "--expr", "x1 +", "--expr", "x2"],
    ["star", "--expr", "x1"],
    ["moyal", "--coeff", "1//2"],
    ["moyal", "--order", "0"],
    ["euler", "--genus", "-1"],
    ["cybe", d("sl2.json"), d("r_twodim.json")],
    ["cohomology", d("sl2.json"), "--degree", "9"],
    ["check-jacobi", d("sl2r.json")],
])
def test_input_errors(argv, capsys):
    code, _, _ = call(*argv)
    assert code == EXIT_INPUT


def test_bad_literal_reports_position(tmp_path):
    p = tmp_path / "r.json"
    p.write_text('{"dim": 2,\n "entries": [{"i": 0, "j": 1, "value": "3+*i"}]}')
    code, out, err = call("cybe", d("twodim.json"), p)
    assert code == EXIT_INPUT and not out
    assert f"{p}:2:" in err


def test_malformed_json_reports_position(tmp_path):
    p = tmp_path / "a.json"
    p.write_text('{"dim": 2,\n  "brackets": [}\n')
    code, _, err = call("killing", p)
    assert code == EXIT_INPUT
    assert f"{p}:2:" in err and "malformed JSON" in err


def test_emitted_documents_reparse():
    _, doc = call_json("twist-deform", d("dihedral8.json"), d("dihedral8_twist.json"))
    H = dihedral8()
    assert hopf_from_json(doc["hopf"]) == deform_hopf(H, dihedral8_twist(H))
    _, doc = call_json("dual", d("twodim.json"), d("r_twodim.json"))
    D = lie_from_json(doc["algebra"])
    assert D.dim == 2 and D.C[0][1] == (0, -1)
    _, doc = call_json("pushforward", d("twodim.json"), d("twodim.json"), d("phi_twodim_rescale.json"),
                       d("r_twodim.json"))
    assert r_from_json(doc["r"]).r[0, 1] == 2


def test_cobracket_document_accepted(tmp_path):
    _, doc = call_json("cobracket", d("twodim.json"), d("r_twodim.json"))
    p = tmp_path / "gamma.json"
    p.write_text(json.dumps(doc["cobracket"]))
    code, out, _ = call("cocycle", d("twodim.json"), p)
    assert code == EXIT_OK and "pass" in out


def test_data_documents_parse():
    for name in ("twodim.json", "heisenberg.json", "sl2.json", "so3.json"):
        L = lie_from_json(json.loads((DATA / name).read_text()))
        assert L.dim in (2, 3)
    assert lie_from_json(json.loads((DATA / "twodim.json").read_text())) == two_dim()
