import pytest

from twiststar.bialg import Bivector, triangular_catalog
from twiststar.core import Matrix
from twiststar.deform import check_associativity, parse_poly, twist_product
from twiststar.liealg import LieAlgebra, direct_sum, sl2, so3, two_dim
from twiststar.verdict import (
    CITE_EULER,
    INCONSISTENCY_FLAG,
    Answer,
    Step,
    Verdict,
    algebra_verdict,
    euler_characteristic_surface,
    surface_verdict,
)


@pytest.mark.parametrize("genus,chi", [(0, 2), (1, 0), (2, -2), (3, -4), (10, -18)])
def test_euler(genus, chi):
    assert euler_characteristic_surface(genus) == chi


def test_euler_rejects_negative_genus():
    with pytest.raises(ValueError):
        euler_characteristic_surface(-1)


def test_sphere_verdict():
    v = surface_verdict(0)
    assert v.exists_twist_star is Answer.NO
    assert any("semisimple" in s.citation for s in v.chain)
    assert v.witness is None


def test_torus_verdict_is_constructive():
    v = surface_verdict(1)
    assert v.exists_twist_star is Answer.YES
    T = v.witness
    assert T is not None and T.order >= 3
    x1, x2 = parse_poly("x1"), parse_poly("x2")
    assert check_associativity(T, x1, x2, x1 * x2, 3).passed
    comm = twist_product(T, x1, x2) - twist_product(T, x2, x1)
    assert comm[1] == parse_poly("2*i")


@pytest.mark.parametrize("genus", [2, 3, 4, 5])
def test_higher_genus_verdict(genus):
    v = surface_verdict(genus)
    assert v.exists_twist_star is Answer.NO
    assert v.chain[0].citation == CITE_EULER
    assert f"χ = {2 - 2 * genus}" in v.chain[0].result
    assert any("χ(M) ≥ 0" in s.citation for s in v.chain)


def test_verdicts_are_deterministic_and_cited():
    for g in range(6):
        a, b = surface_verdict(g), surface_verdict(g)
        assert a == b
        assert all(s.citation for s in a.chain)


def test_two_dim_pipeline():
    v = algebra_verdict(two_dim(), Bivector.wedge(2, 0, 1))
    assert v.exists_twist_star is Answer.UNDETERMINED
    assert not v.flags
    steps = [s.step for s in v.chain]
    assert steps == ["antisymmetry", "CYBE", "h_r extraction", "restriction", "Killing form", "semisimplicity of h_r"]
    assert "dim h_r = 2" in v.chain[2].result
    assert v.lines()[-1] == "no contradiction flag"


def test_zero_r_pipeline():
    v = algebra_verdict(sl2(), Bivector.zero(3))
    assert "dim h_r = 0" in v.chain[2].result
    assert not v.flags


def test_symmetric_candidate_rejected():
    v = algebra_verdict(sl2(), Matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]]))
    assert [s.step for s in v.chain] == ["antisymmetry"]
    assert v.chain[0].result.startswith("fail")
    assert INCONSISTENCY_FLAG not in v.flags


def test_cybe_failure_rejected():
    v = algebra_verdict(sl2(), Bivector.wedge(3, 1, 2))
    assert v.chain[-1].step == "CYBE" and v.chain[-1].result.startswith("fail")


def test_shape_mismatch():
    with pytest.raises(ValueError):
        algebra_verdict(sl2(), Bivector.wedge(2, 0, 1))


@pytest.mark.parametrize("entry", triangular_catalog(), ids=lambda e: e[0])
def test_triangular_catalog_never_flags(entry):
    _, L, r = entry
    v = algebra_verdict(L, r)
    assert INCONSISTENCY_FLAG not in v.flags
    assert v.exists_twist_star is not Answer.NO


def test_flag_path(monkeypatch):
    # no genuine r-matrix has a semisimple h_r, so force the semisimplicity test to say yes
    import twiststar.verdict as verdict_mod

    monkeypatch.setattr(verdict_mod, "is_semisimple", lambda L: True)
    v = algebra_verdict(two_dim(), Bivector.wedge(2, 0, 1))
    assert v.exists_twist_star is Answer.NO
    assert v.flags == (INCONSISTENCY_FLAG,)
    assert v.lines()[-1] == f"  FLAG: {INCONSISTENCY_FLAG}"


def test_verdict_invariants():
    with pytest.raises(ValueError):
        Verdict(Answer.YES, ())
    with pytest.raises(ValueError):
        Verdict(Answer.NO, (Step("a", "b", ""),))


def test_verdict_json_round_trip():
    for v in (surface_verdict(0), surface_verdict(1), algebra_verdict(two_dim(), Bivector.wedge(2, 0, 1))):
        assert Verdict.from_json(v.to_json()) == v


def test_semisimple_sum_has_no_nondegenerate_rmatrix_on_small_grid():
    # on the semisimple sl2 ⊕ so3 no candidate, accepted or rejected, may raise the flag
    L = direct_sum(sl2(), so3())
    assert isinstance(L, LieAlgebra)
    for i, j in [(0, 1), (0, 2), (1, 2), (3, 4)]:
        v = algebra_verdict(L, Bivector.wedge(6, i, j))
        assert INCONSISTENCY_FLAG not in v.flags
