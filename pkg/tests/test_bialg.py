import random
from itertools import product

import pytest

from oracles import cyb_from_brackets
from twiststar.bialg import (
    Bivector,
    Cobracket,
    JacobiFailure,
    NotAHomomorphism,
    NotAnRMatrix,
    RClass,
    alt,
    check_cocycle,
    check_cojacobi,
    classify_r,
    cobracket_from_r,
    cyb,
    dual_bracket,
    etingof_schiffmann,
    gamma_then_gamma,
    nonzero_cyb_components,
    pushforward_r,
    random_bivector,
    restricted_r,
    triangular_catalog,
)
from twiststar.core import Matrix, S, rank
from twiststar.liealg import (
    Subspace,
    abelian,
    affine_plane,
    catalog,
    check_jacobi,
    heisenberg,
    is_semisimple,
    restrict,
    sl2,
    so3,
    two_dim,
)

ALGEBRAS = dict(catalog(), aff=affine_plane())


def as_dict(t, n):
    return {(i, m, l): v for i, m, l, v in
            ((k // (n * n), (k // n) % n, k % n, v) for k, v in enumerate(t)) if v}


def wedge_matrix(n, i, j, c=1):
    return Bivector.wedge(n, i, j, c).r


# cobracket from r ---------------------------------------------------------------

def test_cobracket_of_2d_rmatrix():
    L = two_dim()
    g = cobracket_from_r(L, Bivector.wedge(2, 0, 1))
    assert g.gamma[0].is_zero()
    assert g.gamma[1] == -wedge_matrix(2, 0, 1)


def test_cobracket_trivial_cases():
    assert all(m.is_zero() for m in cobracket_from_r(sl2(), Bivector.zero(3)).gamma)
    r = random_bivector(3, random.Random(0))
    assert all(m.is_zero() for m in cobracket_from_r(abelian(3), r).gamma)


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_coboundaries_are_cocycles(name):
    L = ALGEBRAS[name]
    rng = random.Random(name)
    for _ in range(10):
        assert check_cocycle(L, cobracket_from_r(L, random_bivector(L.dim, rng))).passed


def test_cocycle_examples():
    L = two_dim()
    worked = Cobracket((Matrix.zeros(2, 2), -wedge_matrix(2, 0, 1)))
    assert check_cocycle(L, worked).passed
    # every γ on the 2D algebra is a cocycle, including γ(X) = X∧Y, γ(Y) = 0
    assert check_cocycle(L, Cobracket((wedge_matrix(2, 0, 1), Matrix.zeros(2, 2)))).passed
    H = heisenberg()
    bad = Cobracket((wedge_matrix(3, 0, 1), Matrix.zeros(3, 3), Matrix.zeros(3, 3)))
    rep = check_cocycle(H, bad)
    assert not rep.passed and rep.witnesses == ((0, 1),)


def test_cobracket_rejects_non_antisymmetric():
    with pytest.raises(ValueError):
        Cobracket((Matrix([[1, 0], [0, 0]]), Matrix.zeros(2, 2)))


# coJacobi and dual brackets --------------------------------------------------------

def test_cojacobi_examples():
    L = two_dim()
    worked = Cobracket((Matrix.zeros(2, 2), -wedge_matrix(2, 0, 1)))
    assert check_cojacobi(L, worked).passed
    assert check_cojacobi(L, Cobracket((Matrix.zeros(2, 2),) * 2)).passed


def _random_cobracket(n, rng):
    return Cobracket(tuple(random_bivector(n, rng, -2, 2).r for _ in range(n)))


def test_perturbed_cobracket_fails_cojacobi():
    H = heisenberg()
    base = cobracket_from_r(H, Bivector.wedge(3, 0, 1))
    assert check_cojacobi(H, base).passed
    rng = random.Random(7)
    for _ in range(50):
        i, a, b = rng.randrange(3), *rng.sample(range(3), 2)
        g = list(base.gamma)
        g[i] = g[i] + wedge_matrix(3, a, b, rng.choice([1, 2, -1]))
        pert = Cobracket(tuple(g))
        rep = check_cojacobi(H, pert)
        if not rep.passed:
            assert rep.witnesses
            with pytest.raises(JacobiFailure):
                dual_bracket(H, pert)
            return
    pytest.fail("no coJacobi-violating perturbation found")


def test_dual_bracket_examples():
    L = two_dim()
    worked = Cobracket((Matrix.zeros(2, 2), -wedge_matrix(2, 0, 1)))
    D = dual_bracket(L, worked)
    assert check_jacobi(D).passed
    # [X*, Y*] = −Y*
    assert D.bracket(D.e(0), D.e(1)) == (S(0), S(-1))
    Z = dual_bracket(L, Cobracket((Matrix.zeros(2, 2),) * 2))
    assert Z.is_abelian()


@pytest.mark.parametrize("seed", range(40))
def test_dual_jacobi_iff_cojacobi_random(seed):
    rng = random.Random(seed)
    n = 3
    gamma = _random_cobracket(n, rng)
    L = abelian(n)
    jac = check_jacobi(dual_bracket(L, gamma, validate=False)).passed
    assert jac == check_cojacobi(L, gamma).passed


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_dual_jacobi_iff_cojacobi_catalog(name):
    L = ALGEBRAS[name]
    rng = random.Random(name)
    for _ in range(6):
        gamma = cobracket_from_r(L, random_bivector(L.dim, rng))
        jac = check_jacobi(dual_bracket(L, gamma, validate=False)).passed
        assert jac == check_cojacobi(L, gamma).passed


# CYB ------------------------------------------------------------------------------

def test_cyb_examples():
    assert not any(cyb(two_dim(), Bivector.wedge(2, 0, 1)))
    assert not any(cyb(sl2(), Bivector.zero(3)))
    assert not any(cyb(heisenberg(), Bivector.wedge(3, 0, 2)))


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_cyb_matches_bracket_oracle(name):
    L = ALGEBRAS[name]
    rng = random.Random(name)
    for _ in range(8):
        R = Matrix([[S(rng.randint(-2, 2)) for _ in range(L.dim)] for _ in range(L.dim)])
        assert as_dict(cyb(L, R), L.dim) == cyb_from_brackets(L, R.rows)


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_alt_identity(name):
    L = ALGEBRAS[name]
    n = L.dim
    rng = random.Random(name)
    for _ in range(10):
        r = random_bivector(n, rng)
        gamma = cobracket_from_r(L, r)
        c = cyb(L, r)
        for i in range(n):
            lhs = alt(gamma_then_gamma(gamma, i), n)
            rhs = tuple(-v for v in L.ad3_basis[i].apply(c))
            assert lhs == rhs


def test_nonzero_components_sl2():
    comps = nonzero_cyb_components(sl2(), Bivector.wedge(3, 1, 2))
    assert comps
    assert all(len(c) == 4 for c in comps)


# classification ----------------------------------------------------------------------

def test_classify_examples():
    assert classify_r(two_dim(), Bivector.wedge(2, 0, 1))[0] is RClass.TRIANGULAR
    e11 = Matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    assert classify_r(abelian(3), e11)[0] is RClass.QUASITRIANGULAR
    XY = Matrix([[0, 1], [0, 0]])
    kind, rep = classify_r(two_dim(), XY)
    # CYB(X⊗Y) = −X⊗X⊗Y and ad_X(X⊗Y + Y⊗X) = 2 X⊗X, so nothing holds
    assert kind is RClass.NONE
    assert not rep["antisymmetric"].passed
    assert rep["cyb=0"].witnesses == ((0, 0, 1, S(-1)),)
    assert not rep["r+sigma(r) invariant"].passed


def test_classify_coboundary():
    # on sl2 the bivector e∧f has CYB proportional to the invariant 3-tensor
    kind, rep = classify_r(sl2(), Bivector.wedge(3, 1, 2))
    assert kind is RClass.COBOUNDARY
    assert not rep["cyb=0"].passed and rep["ad3(cyb)=0"].passed


def test_classify_quasitriangular_casimir():
    # r = e⊗f + h⊗h/4 is the standard quasitriangular structure on sl2
    r = Matrix([[S(1) / 4, 0, 0], [0, 0, 1], [0, 0, 0]])
    kind, _ = classify_r(sl2(), r)
    assert kind is RClass.QUASITRIANGULAR


# triangular catalog -----------------------------------------------------------------------

@pytest.mark.parametrize("entry", triangular_catalog(), ids=lambda e: e[0])
def test_triangular_catalog(entry):
    _, L, r = entry
    assert classify_r(L, r)[0] is RClass.TRIANGULAR
    h = etingof_schiffmann(L, r)
    sub = restrict(L, h)
    assert rank(restricted_r(r, h)) == h.dim
    if h.dim:
        assert not is_semisimple(sub)


def test_etingof_schiffmann_examples():
    L = two_dim()
    assert etingof_schiffmann(L, Bivector.wedge(2, 0, 1)).dim == 2
    assert etingof_schiffmann(sl2(), Bivector.zero(3)).dim == 0
    H = heisenberg()
    h = etingof_schiffmann(H, Bivector.wedge(3, 0, 2))
    assert h.same_as(Subspace.span([H.e(0), H.e(2)], 3))
    assert restrict(H, h).is_abelian()


def test_etingof_schiffmann_rejects():
    with pytest.raises(NotAnRMatrix):
        etingof_schiffmann(sl2(), Bivector.wedge(3, 1, 2))
    with pytest.raises(NotAnRMatrix):
        etingof_schiffmann(two_dim(), Matrix([[0, 1], [0, 0]]))


# pushforward -------------------------------------------------------------------------------

def test_pushforward_examples():
    L = two_dim()
    r = Bivector.wedge(2, 0, 1)
    assert pushforward_r(Matrix.identity(2), r, L, L) == r
    assert pushforward_r(Matrix.zeros(2, 2), r, L, L).r.is_zero()
    scaled = pushforward_r(Matrix.diagonal([2, 1]), r, L, L)
    assert scaled == Bivector.wedge(2, 0, 1, 2)
    assert classify_r(L, scaled)[0] is RClass.TRIANGULAR


def test_pushforward_rejects_non_homomorphism():
    L = two_dim()
    with pytest.raises(NotAHomomorphism) as e:
        pushforward_r(Matrix.diagonal([1, 2]), Bivector.wedge(2, 0, 1), L, L)
    assert e.value.witness == (0, 1)


def test_pushforward_into_sl2_stays_triangular():
    # X ↦ e, Y ↦ −h/2 embeds the 2D algebra into sl2
    phi = Matrix([[0, -S(1) / 2], [1, 0], [0, 0]])
    r2 = pushforward_r(phi, Bivector.wedge(2, 0, 1), two_dim(), sl2())
    assert not any(cyb(sl2(), r2))


# coboundary invariance ----------------------------------------------------------------------

@pytest.mark.parametrize("L,alpha", [
    (heisenberg(), Bivector.wedge(3, 0, 2)),
    (heisenberg(), Bivector.wedge(3, 1, 2)),
    (abelian(3), Bivector.wedge(3, 0, 1)),
    (affine_plane(), Bivector.zero(3)),
])
def test_invariant_shift_keeps_cobracket(L, alpha):
    # α must itself be ad^(2)-invariant for the statement to apply
    flat = alpha.r.flatten()
    if not all(not any(A.apply(flat)) for A in L.ad2_basis):
        pytest.skip("α not invariant")
    rng = random.Random(3)
    for _ in range(5):
        r = random_bivector(L.dim, rng)
        assert cobracket_from_r(L, r).gamma == cobracket_from_r(L, r + alpha).gamma


def test_heisenberg_central_wedges_are_invariant():
    H = heisenberg()
    for i, j in [(0, 2), (1, 2)]:
        flat = wedge_matrix(3, i, j).flatten()
        assert all(not any(A.apply(flat)) for A in H.ad2_basis)


def test_so3_has_no_nonzero_triangular_on_small_grid():
    # every nonzero candidate with entries in {−1,0,1} violates CYBE on a simple algebra
    L = so3()
    for a, b, c in product((-1, 0, 1), repeat=3):
        if (a, b, c) == (0, 0, 0):
            continue
        r = Bivector.from_entries(3, {(0, 1): a, (0, 2): b, (1, 2): c})
        assert any(cyb(L, r))
