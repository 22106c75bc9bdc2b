from fractions import Fraction
from itertools import product

import pytest

from oracles import GroupAlgebraOracle, klein_oracle, klein_twist_oracle
from twiststar.core import Matrix, S
from twiststar.hopf import (
    HopfAlgebra,
    ModuleAlgebra,
    ModuleAxiomsFail,
    NotATwist,
    NotInvertible,
    TwistElement,
    abelian_twist,
    antipode_properties,
    check_algebra,
    check_hopf_axioms,
    check_inverse_cocycle,
    check_module_algebra,
    commutator_table,
    coregular_module_algebra,
    cyclic_group_algebra,
    deform_hopf,
    dihedral8,
    dihedral8_twist,
    dual_algebra_of_coalgebra,
    hopf_catalog,
    invert,
    is_twist,
    klein_four,
    klein_four_twist,
    solve_antipode,
    trivial_hopf,
    trivial_module_algebra,
    twist_back,
    twist_module_algebra,
    u_elements,
)

CATALOG = hopf_catalog()
KLEIN_ELEMENTS = [(0, 0), (1, 0), (0, 1), (1, 1)]


def to_group_dict(F, elements):
    d = len(elements)
    return {(elements[k // d], elements[k % d]): Fraction(c.re) for k, c in enumerate(F) if c}


def d4_oracle():
    els = [(k, f) for f in (0, 1) for k in range(4)]

    def mul(x, y):
        return ((x[0] + (-y[0] if x[1] else y[0])) % 4, (x[1] + y[1]) % 2)

    return els, GroupAlgebraOracle(els, mul)


# axioms ----------------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_axioms(name):
    H = CATALOG[name]
    assert check_hopf_axioms(H).passed
    assert antipode_properties(H).passed


def test_axiom_report_has_every_family():
    names = [c.name for c in check_hopf_axioms(klein_four()).checks]
    assert len(names) == 12
    for word in ("associativity", "coassociativity", "counit", "antipode", "unit"):
        assert any(word in n for n in names)


def test_z2_by_direct_evaluation():
    # independent: k[Z/2] written out by hand
    mult = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
    coprod = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    H = HopfAlgebra(2, mult, (1, 0), coprod, (1, 1), Matrix.identity(2))
    assert H == cyclic_group_algebra(2)
    assert check_hopf_axioms(H).passed


def test_identity_antipode_on_z3_fails():
    Z3 = cyclic_group_algebra(3)
    bad = HopfAlgebra(3, Z3.mult, Z3.unit, Z3.coprod, Z3.counit, Matrix.identity(3))
    rep = check_hopf_axioms(bad)
    failing = {c.name for c in rep.failures()}
    assert failing == {"antipode", "antipode (right)"}
    assert rep["antipode"].witnesses == ((1,), (2,))


def test_one_dimensional_hopf():
    H = trivial_hopf()
    assert H.dim == 1
    assert check_hopf_axioms(H).passed and antipode_properties(H).passed


def test_z3_antipode_is_inverse():
    H = cyclic_group_algebra(3)
    assert H.antipode.column(1) == H.e(2)
    assert antipode_properties(H).passed


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_antipode_unique(name):
    H = CATALOG[name]
    unique, Ssol = solve_antipode(H)
    assert unique
    assert Ssol == H.antipode


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_antipode_fixes_unit(name):
    H = CATALOG[name]
    assert H.antipode.apply(H.unit) == H.unit


# twists ----------------------------------------------------------------------------------

def test_trivial_twist():
    H = klein_four()
    T = TwistElement.trivial(H)
    assert is_twist(H, T.F).passed
    assert deform_hopf(H, T) == H
    assert twist_back(H, T) == H


def test_klein_twist_against_oracle():
    H = klein_four()
    T = klein_four_twist(H)
    assert to_group_dict(T.F, KLEIN_ELEMENTS) == klein_twist_oracle()
    assert is_twist(H, T).passed
    O = klein_oracle()
    F = klein_twist_oracle()
    one = O.one()
    lhs = O.mul(O.tensor(F, one), O.delta_at(F, 0))
    rhs = O.mul(O.tensor(one, F), O.delta_at(F, 1))
    assert lhs == rhs
    assert O.eps_at(F, 0) == one and O.eps_at(F, 1) == one


def test_klein_twist_squares_to_one():
    O = klein_oracle()
    F = klein_twist_oracle()
    assert O.mul(F, F) == O.one(2)
    H = klein_four()
    T = klein_four_twist(H)
    assert T.Finv == T.F


def test_non_twist_reported():
    H = cyclic_group_algebra(2)
    F = (1, 0, 0, 1)  # 1⊗1 + g⊗g
    rep = is_twist(H, F)
    assert not rep.passed
    assert not rep["normalization (ε⊗1)F = 1"].passed
    assert not rep["normalization (1⊗ε)F = 1"].passed
    # (ε⊗1)F = 1 + g, not the unit
    assert "[1, 1]" in rep["normalization (ε⊗1)F = 1"].detail
    assert not rep["invertible"].passed
    with pytest.raises(NotInvertible):
        TwistElement.of(H, F)


def test_deform_rejects_non_twist():
    H = klein_four()
    # invertible but not normalized: 2(1⊗1)
    F = tuple(S(2) if k == 0 else S(0) for k in range(16))
    T = TwistElement.of(H, F)
    with pytest.raises(NotATwist) as e:
        deform_hopf(H, T)
    assert not e.value.report.passed


@pytest.mark.parametrize("maker,Hmaker", [(klein_four_twist, klein_four), (dihedral8_twist, dihedral8)])
def test_deformation_properties(maker, Hmaker):
    H = Hmaker()
    T = maker(H)
    U, Ui = u_elements(H, T)
    assert H.multiply(U, Ui) == H.unit and H.multiply(Ui, U) == H.unit
    assert check_inverse_cocycle(H, T).passed
    HF = deform_hopf(H, T)
    assert check_hopf_axioms(HF).passed
    assert antipode_properties(HF).passed
    assert HF.mult == H.mult and HF.counit == H.counit and HF.unit == H.unit
    assert twist_back(H, T) == H


def test_klein_deformation_is_trivial_on_coproduct():
    # abelian group, F² = 1: conjugation by F commutes with Δ(g) = g⊗g
    H = klein_four()
    assert deform_hopf(H, klein_four_twist(H)).coprod == H.coprod


def test_d4_deformed_coproduct_against_oracle():
    H = dihedral8()
    T = dihedral8_twist(H)
    HF = deform_hopf(H, T)
    assert HF.coprod != H.coprod
    els, O = d4_oracle()
    F = to_group_dict(T.F, els)
    Fi = to_group_dict(T.Finv, els)
    assert O.mul(F, Fi) == O.one(2)
    for i, g in enumerate(els):
        expected = O.mul(O.mul(F, {(g, g): Fraction(1)}), Fi)
        got = {(els[j], els[k]): Fraction(HF.coprod[i][j][k].re)
               for j in range(8) for k in range(8) if HF.coprod[i][j][k]}
        assert got == expected


def test_cocommutative_stays_cocommutative_under_trivial_twist():
    H = dihedral8()
    HF = deform_hopf(H, TwistElement.trivial(H))
    assert all(HF.coprod[i][j][k] == HF.coprod[i][k][j] for i, j, k in product(range(8), repeat=3))


def test_invert_in_tensor_square():
    H = klein_four()
    F = abelian_twist(H, 1, 2)
    Fi = invert(H, F, 2)
    T = TwistElement(F, Fi)
    assert T.inverse().inverse() == T


# module algebras ----------------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(CATALOG))
def test_coregular_and_trivial_module_algebras(name):
    H = CATALOG[name]
    assert check_module_algebra(H, coregular_module_algebra(H)).passed
    assert check_module_algebra(H, trivial_module_algebra(H)).passed


def test_left_multiplication_is_not_a_module_algebra():
    H = klein_four()
    A = ModuleAlgebra(4, H.mult, H.unit, H.mult)
    rep = check_module_algebra(H, A)
    assert not rep.passed
    assert not rep["ξ▷(ab) = (ξ1▷a)(ξ2▷b)"].passed
    with pytest.raises(ModuleAxiomsFail):
        twist_module_algebra(H, klein_four_twist(H), A)


def test_trivial_twist_keeps_product():
    H = klein_four()
    A = coregular_module_algebra(H)
    B = twist_module_algebra(H, TwistElement.trivial(H), A)
    assert B.amult == A.amult


@pytest.mark.parametrize("maker,Hmaker,pairs", [(klein_four_twist, klein_four, 6), (dihedral8_twist, dihedral8, 12)])
def test_twisted_module_algebra(maker, Hmaker, pairs):
    H = Hmaker()
    T = maker(H)
    A = coregular_module_algebra(H)
    assert not commutator_table(A)
    B = twist_module_algebra(H, T, A)
    assert B.aunit == A.aunit
    assert check_module_algebra(deform_hopf(H, T), B).passed
    assert len(commutator_table(B)) == pairs


def test_dual_algebra():
    H = cyclic_group_algebra(2)
    mult, unit = dual_algebra_of_coalgebra(H)
    # δ_g δ_h = δ_{g,h} δ_g in the dual basis
    for a, b in product(range(2), repeat=2):
        assert mult[a][b] == tuple(S(1) if a == b == c else S(0) for c in range(2))
    assert unit == (S(1), S(1))
    m1, u1 = dual_algebra_of_coalgebra(trivial_hopf())
    assert m1 == (((S(1),),),) and u1 == (S(1),)
    assert check_algebra(*dual_algebra_of_coalgebra(klein_four())).passed
