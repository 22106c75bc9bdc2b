import json

import pytest

from twiststar.bialg import Bivector, cobracket_from_r
from twiststar.core import I, Matrix, S
from twiststar.decomp import matrix_catalog
from twiststar.deform import moyal_twist, parse_poly, twist_product
from twiststar.formats import (
    DocumentError,
    bidiff_from_json,
    bidiff_to_json,
    cobracket_from_json,
    cobracket_to_json,
    homomorphism_from_json,
    homomorphism_to_json,
    hopf_from_json,
    hopf_to_json,
    lie_from_json,
    lie_to_json,
    matrix_algebra_from_json,
    matrix_algebra_to_json,
    module_algebra_from_json,
    module_algebra_to_json,
    parse_document,
    poly_series_from_json,
    poly_series_to_json,
    r_from_json,
    r_to_json,
    read_document,
    twist_series_from_json,
    twist_series_to_json,
    twist_to_json,
    twist_vector_from_json,
)
from twiststar.hopf import coregular_module_algebra, dihedral8, dihedral8_twist, hopf_catalog, klein_four
from twiststar.liealg import InvalidAlgebra, catalog, sl2


def through_text(doc):
    # serialize and re-read, so the tests cover the text layer as well
    return parse_document(json.dumps(doc))


@pytest.mark.parametrize("name", sorted(catalog()))
def test_lie_round_trip(name):
    L = catalog()[name]
    doc, ctx = through_text(lie_to_json(L))
    assert lie_from_json(doc, ctx) == L


def test_lie_reversed_bracket_sign():
    doc = {"dim": 2, "brackets": [{"left": 1, "right": 0, "result": {"1": "-1"}}]}
    L = lie_from_json(doc)
    assert L.C[0][1] == (S(0), S(1))


def test_lie_invalid_jacobi():
    doc = {"dim": 3, "brackets": [{"left": 0, "right": 1, "result": {"2": "1"}},
                                  {"left": 1, "right": 2, "result": {"1": "1"}}]}
    with pytest.raises(InvalidAlgebra):
        lie_from_json(doc)
    assert lie_from_json(doc, validate=False).dim == 3


@pytest.mark.parametrize("doc,fragment", [
    ({"dim": 2, "brackets": [{"left": 0, "right": 2, "result": {}}]}, "out of range"),
    ({"dim": 2, "brackets": [{"left": 0, "right": 0, "result": {"0": "1"}}]}, "must be zero"),
    ({"dim": 2, "brackets": [{"left": 0, "right": 1, "result": {}}, {"left": 1, "right": 0, "result": {}}]}, "twice"),
    ({"basis": []}, "missing field 'dim'"),
    ({"dim": 2, "basis": ["x"]}, "expected 2 entries"),
])
def test_lie_document_errors(doc, fragment):
    with pytest.raises(DocumentError) as e:
        lie_from_json(doc)
    assert fragment in str(e.value)


def test_r_round_trip():
    r = Bivector.from_entries(3, {(0, 1): S(1) / 2, (1, 2): I})
    doc, ctx = through_text(r_to_json(r))
    assert r_from_json(doc, ctx) == r
    M = Matrix([[1, 0], [0, 0]])
    assert r_to_json(M) == {"dim": 2, "matrix": [["1", "0"], ["0", "0"]]}
    assert r_from_json(r_to_json(M)) == M


def test_r_rejects_lower_entries():
    with pytest.raises(DocumentError) as e:
        r_from_json({"dim": 2, "entries": [{"i": 1, "j": 0, "value": "1"}]})
    assert "i < j" in str(e.value)


def test_cobracket_round_trip():
    L = sl2()
    gamma = cobracket_from_r(L, Bivector.wedge(3, 1, 2))
    doc, ctx = through_text(cobracket_to_json(gamma))
    assert cobracket_from_json(doc, ctx) == gamma


def test_homomorphism_round_trip():
    phi = Matrix([[2, 0], [0, 1], [0, 0]])
    assert homomorphism_from_json(homomorphism_to_json(phi)) == phi


@pytest.mark.parametrize("name", sorted(matrix_catalog()))
def test_matrix_algebra_round_trip(name):
    M = matrix_catalog()[name]
    back = matrix_algebra_from_json(matrix_algebra_to_json(M))
    assert back.basis == M.basis and back.ambient_size == M.ambient_size


@pytest.mark.parametrize("name", sorted(hopf_catalog()))
def test_hopf_round_trip(name):
    H = hopf_catalog()[name]
    doc, ctx = through_text(hopf_to_json(H))
    assert hopf_from_json(doc, ctx) == H


def test_twist_and_module_algebra_round_trip():
    H = dihedral8()
    T = dihedral8_twist(H)
    assert twist_vector_from_json(twist_to_json(T), H) == T.F
    A = coregular_module_algebra(H)
    back = module_algebra_from_json(module_algebra_to_json(A), H)
    assert back == A


def test_twist_vector_length_checked():
    with pytest.raises(DocumentError) as e:
        twist_vector_from_json({"F": ["1"] * 4}, klein_four())
    assert "expected 16 entries" in str(e.value)


def test_deformation_documents_round_trip():
    T = moyal_twist(I, 3)
    for op in T.F.coeffs:
        assert bidiff_from_json(bidiff_to_json(op)) == op
    back = twist_series_from_json(twist_series_to_json(T))
    assert back.F == T.F and back.Finv == T.Finv
    s = twist_product(T, parse_poly("x1^2 + i*x2"), parse_poly("x2"))
    assert poly_series_from_json(poly_series_to_json(s)) == s


def test_twist_series_document_checks_inverse():
    doc = twist_series_to_json(moyal_twist(I, 2))
    doc["Finv"] = doc["F"]
    with pytest.raises(DocumentError):
        twist_series_from_json(doc)


def test_bad_literal_is_located():
    text = '{\n  "dim": 2,\n  "entries": [{"i": 0, "j": 1, "value": "1//2"}]\n}'
    doc, ctx = parse_document(text, "r.json")
    with pytest.raises(DocumentError) as e:
        r_from_json(doc, ctx)
    err = e.value
    assert err.source == "r.json" and err.line == 3
    # the column points inside the quoted literal, at or after its start
    start = text.splitlines()[2].index('"1//2"') + 2
    assert err.column is not None and err.column >= start
    assert str(err).startswith("r.json:3:")


def test_malformed_json_is_located():
    with pytest.raises(DocumentError) as e:
        parse_document('{"dim": 2,\n "entries": [}', "x.json")
    assert e.value.line == 2 and "malformed JSON" in str(e.value)


def test_missing_file(tmp_path):
    with pytest.raises(DocumentError) as e:
        read_document(tmp_path / "absent.json")
    assert "file not found" in str(e.value)


def test_non_string_literal_rejected():
    with pytest.raises(DocumentError) as e:
        r_from_json({"dim": 2, "entries": [{"i": 0, "j": 1, "value": 1.5}]})
    assert "expected a scalar literal" in str(e.value)
