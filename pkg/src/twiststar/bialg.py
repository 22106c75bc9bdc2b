"""Lie bialgebras, r-matrices and the classical Yang–Baxter map.

An element r = Σ r^{ij} e_i ⊗ e_j of g⊗g is stored as the full n×n matrix
``r^{ij}``; X∧Y means X⊗Y − Y⊗X.  A cobracket γ stores, for every basis
index i, the matrix of γ(e_i) ∈ g⊗g.  Elements of g^{⊗3} are flattened
vectors indexed by ``(i*n + m)*n + l``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .core.linalg import (
    InconsistentSystem,
    Matrix,
    ShapeError,
    Vector,
    flat_index,
    rank,
    span_basis,
)
from .core.report import Check, Report
from .core.scalar import ZERO, Scalar, ScalarLike, S
from .liealg import (
    LieAlgebra,
    Subspace,
    check_jacobi,
    direct_sum,
    is_homomorphism,
    restrict,
    subalgebra_closure,
)


class NotAnRMatrix(ValueError):
    pass


class NotAHomomorphism(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class JacobiFailure(ValueError):
    """The transposed cobracket is not a Lie bracket; carries the algebra and report."""

    def __init__(self, algebra: LieAlgebra, report: Check):
        super().__init__(f"dual bracket violates Jacobi at {len(report.witnesses)} component(s)")
        self.algebra = algebra
        self.report = report


@dataclass(frozen=True)
class Bivector:
    """Antisymmetric r^{ij}; use a plain Matrix for candidates with a symmetric part."""

    r: Matrix

    def __post_init__(self):
        if not self.r.is_antisymmetric():
            raise ValueError("bivector must be antisymmetric (r^ij = -r^ji)")

    @classmethod
    def wedge(cls, n: int, i: int, j: int, coeff: ScalarLike = 1) -> "Bivector":
        """coeff · e_i ∧ e_j = coeff (e_i⊗e_j − e_j⊗e_i)."""
        return cls.from_entries(n, {(i, j): coeff})

    @classmethod
    def from_entries(cls, n: int, entries: dict[tuple[int, int], ScalarLike]) -> "Bivector":
        rows = [[ZERO] * n for _ in range(n)]
        for (i, j), v in entries.items():
            if i == j:
                raise ValueError("diagonal entries of a bivector must vanish")
            v = S(v)
            rows[i][j] += v
            rows[j][i] -= v
        return cls(Matrix(rows, ncols=n))

    @classmethod
    def zero(cls, n: int) -> "Bivector":
        return cls(Matrix.zeros(n, n))

    @property
    def dim(self) -> int:
        return self.r.nrows

    def __add__(self, other: "Bivector") -> "Bivector":
        return Bivector(self.r + other.r)

    def scale(self, c: ScalarLike) -> "Bivector":
        return Bivector(self.r.scale(c))


@dataclass(frozen=True)
class Cobracket:
    gamma: tuple  # gamma[i] is the Matrix of γ(e_i)

    def __post_init__(self):
        for i, g in enumerate(self.gamma):
            if not g.is_antisymmetric():
                raise ValueError(f"γ(e_{i}) is not in g∧g")

    @property
    def dim(self) -> int:
        return len(self.gamma)

    def image(self, x: Sequence[Scalar]) -> Matrix:
        n = self.dim
        out = Matrix.zeros(n, n)
        for c, g in zip(x, self.gamma):
            if c:
                out = out + g.scale(c)
        return out


def _as_matrix(r) -> Matrix:
    return r.r if isinstance(r, Bivector) else r


def cobracket_from_r(L: LieAlgebra, r: Bivector) -> Cobracket:
    """γ = δr, i.e. γ(e_i) = ad^{(2)}_{e_i} r."""
    rm = _as_matrix(r)
    n = L.dim
    flat = rm.flatten()
    return Cobracket(tuple(Matrix.reshape(L.ad2_basis[i].apply(flat), n, n) for i in range(n)))


def check_cocycle(L: LieAlgebra, gamma: Cobracket) -> Check:
    """γ([e_i,e_j]) = ad^{(2)}_{e_i} γ(e_j) − ad^{(2)}_{e_j} γ(e_i) for every pair."""
    n = L.dim
    ad2 = L.ad2_basis
    flat = [g.flatten() for g in gamma.gamma]
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            lhs = gamma.image(L.C[i][j]).flatten()
            a = ad2[i].apply(flat[j])
            b = ad2[j].apply(flat[i])
            rhs = tuple(x - y for x, y in zip(a, b))
            if lhs != rhs:
                bad.append((i, j))
    return Check("cocycle", not bad, tuple(bad))


def alt(t: Sequence[Scalar], n: int) -> Vector:
    """Alt(x⊗y⊗z) = x⊗y⊗z + y⊗z⊗x + z⊗x⊗y on a flattened g^{⊗3} element."""
    out = [ZERO] * (n ** 3)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                v = t[flat_index((a, b, c), n)]
                if not v:
                    continue
                for idx in ((a, b, c), (b, c, a), (c, a, b)):
                    k = flat_index(idx, n)
                    out[k] = out[k] + v
    return tuple(out)


def gamma_then_gamma(gamma: Cobracket, i: int) -> Vector:
    """(γ⊗1)γ(e_i) as a flattened element of g^{⊗3}."""
    n = gamma.dim
    out = [ZERO] * (n ** 3)
    Gi = gamma.gamma[i].rows
    for a in range(n):
        for b in range(n):
            c1 = Gi[a][b]
            if not c1:
                continue
            Ga = gamma.gamma[a].rows
            for c in range(n):
                for d in range(n):
                    c2 = Ga[c][d]
                    if c2:
                        k = (c * n + d) * n + b
                        out[k] = out[k] + c1 * c2
    return tuple(out)


def check_cojacobi(L: LieAlgebra, gamma: Cobracket) -> Check:
    """Alt((γ⊗1)γ(e_i)) = 0 for each basis index; witnesses are failing indices."""
    n = gamma.dim
    bad = [i for i in range(n) if any(alt(gamma_then_gamma(gamma, i), n))]
    return Check("cojacobi", not bad, tuple(bad))


def dual_bracket(L: LieAlgebra, gamma: Cobracket, validate: bool = True) -> LieAlgebra:
    """Bracket on g* given by transposing γ: [e^a, e^b] = Σ_i γ(e_i)^{ab} e^i."""
    n = gamma.dim
    C = tuple(
        tuple(tuple(gamma.gamma[i].rows[a][b] for i in range(n)) for b in range(n)) for a in range(n)
    )
    dual = LieAlgebra(C, tuple(f"{name}*" for name in L.basis))
    if validate:
        report = check_jacobi(dual)
        if not report.passed:
            raise JacobiFailure(dual, report)
    return dual


def cyb(L: LieAlgebra, r) -> Vector:
    """Components of [r12,r13] + [r12,r23] + [r13,r23] indexed (i, m, l).

    CYB^{iml} = Σ_{j,k} r^{jm} r^{kl} C_{jk}^i + r^{ij} r^{mk} C_{jk}^l + r^{ij} r^{kl} C_{jk}^m.
    Valid for any r ∈ g⊗g, antisymmetric or not.
    """
    R = _as_matrix(r).rows
    n = L.dim
    out = [ZERO] * (n ** 3)
    for j, k, p, c in L._nonzero:
        # [r12,r13]: bracket lands in slot 1 (index p = i)
        for m in range(n):
            if not R[j][m]:
                continue
            for l in range(n):
                if R[k][l]:
                    idx = (p * n + m) * n + l
                    out[idx] = out[idx] + R[j][m] * R[k][l] * c
        # [r13,r23]: slot 3 (p = l); r^{ij} r^{mk}
        for i in range(n):
            if not R[i][j]:
                continue
            for m in range(n):
                if R[m][k]:
                    idx = (i * n + m) * n + p
                    out[idx] = out[idx] + R[i][j] * R[m][k] * c
        # [r12,r23]: slot 2 (p = m); r^{ij} r^{kl}
        for i in range(n):
            if not R[i][j]:
                continue
            for l in range(n):
                if R[k][l]:
                    idx = (i * n + p) * n + l
                    out[idx] = out[idx] + R[i][j] * R[k][l] * c
    return tuple(out)


class RClass(str, Enum):
    TRIANGULAR = "triangular"
    QUASITRIANGULAR = "quasitriangular"
    COBOUNDARY = "coboundary"
    NONE = "none"


def _is_invariant2(L: LieAlgebra, t: Sequence[Scalar]) -> bool:
    return all(not any(A.apply(t)) for A in L.ad2_basis)


def _is_invariant3(L: LieAlgebra, t: Sequence[Scalar]) -> bool:
    if not any(t):
        return True
    return all(not any(A.apply(t)) for A in L.ad3_basis)


def classify_r(L: LieAlgebra, r) -> tuple[RClass, Report]:
    """Most specific of triangular ⊂ quasitriangular, coboundary, or none.

    triangular: antisymmetric and CYB(r) = 0; quasitriangular: CYB(r) = 0 and
    r + σ(r) is g-invariant; coboundary: antisymmetric and CYB(r) is g-invariant.
    """
    R = _as_matrix(r)
    if R.shape != (L.dim, L.dim):
        raise ShapeError(f"r must be {L.dim}x{L.dim}")
    c = cyb(L, R)
    antisym = R.is_antisymmetric()
    cyb_zero = not any(c)
    sym_inv = _is_invariant2(L, (R + R.T).flatten())
    cyb_inv = _is_invariant3(L, c)
    checks = (
        Check("antisymmetric", antisym),
        Check("cyb=0", cyb_zero, tuple(_nonzero_components(c, L.dim))),
        Check("r+sigma(r) invariant", sym_inv),
        Check("ad3(cyb)=0", cyb_inv),
    )
    if antisym and cyb_zero:
        kind = RClass.TRIANGULAR
    elif cyb_zero and sym_inv:
        kind = RClass.QUASITRIANGULAR
    elif antisym and cyb_inv:
        kind = RClass.COBOUNDARY
    else:
        kind = RClass.NONE
    return kind, Report(f"classify r: {kind.value}", checks, {"class": kind.value})


def _nonzero_components(t: Sequence[Scalar], n: int) -> list[tuple]:
    out = []
    for k, v in enumerate(t):
        if v:
            i, rem = divmod(k, n * n)
            m, l = divmod(rem, n)
            out.append((i, m, l, v))
    return out


def nonzero_cyb_components(L: LieAlgebra, r) -> list[tuple]:
    return _nonzero_components(cyb(L, r), L.dim)


def etingof_schiffmann(L: LieAlgebra, r: Bivector) -> Subspace:
    """h_r = {(f⊗1)r : f ∈ g*}, the row space of (r^{ij}).

    Checks that h_r is a subalgebra and that r restricted to h_r has full rank.
    """
    R = _as_matrix(r)
    if not R.is_antisymmetric():
        raise NotAnRMatrix("r is not antisymmetric")
    if any(cyb(L, R)):
        raise NotAnRMatrix("CYB(r) != 0")
    h = Subspace(L.dim, tuple(span_basis(R.rows, L.dim)))
    if not subalgebra_closure(L, h.basis).same_as(h):
        raise AssertionError("row space of an r-matrix is not bracket-closed")
    if rank(restricted_r(r, h)) != h.dim:
        raise AssertionError("r is degenerate on its Etingof–Schiffmann subalgebra")
    return h


def restricted_r(r, h: Subspace) -> Matrix:
    """The k×k matrix r' with r = Bᵀ r' B, B the basis rows of h."""
    R = _as_matrix(r)
    k = h.dim
    if k == 0:
        if not R.is_zero():
            raise InconsistentSystem("r is not supported on the zero subspace")
        return Matrix.zeros(0, 0)
    A = [h.coords(row) for row in R.rows]  # n x k: row p of R = Σ_a A[p][a] B_a
    cols = [tuple(A[p][a] for p in range(R.nrows)) for a in range(k)]
    Q = [h.coords(c) for c in cols]  # Q[a][b]: column a of A in basis B
    return Matrix([[Q[b][a] for b in range(k)] for a in range(k)])


def pushforward_r(phi: Matrix, r: Bivector, src: LieAlgebra, dst: LieAlgebra) -> Bivector:
    """(φ⊗φ) r = φ r φᵀ, after checking φ: src → dst is a Lie homomorphism."""
    w = is_homomorphism(src, dst, phi)
    if w is not None:
        raise NotAHomomorphism(f"φ does not preserve the bracket of basis pair {w}", witness=w)
    return Bivector(phi @ _as_matrix(r) @ phi.T)


def random_bivector(n: int, rng, lo: int = -3, hi: int = 3) -> Bivector:
    entries = {(i, j): rng.randint(lo, hi) for i in range(n) for j in range(i + 1, n)}
    return Bivector.from_entries(n, entries)


def triangular_catalog() -> list[tuple[str, LieAlgebra, Bivector]]:
    """Known triangular r-matrices; membership is re-verified by the tests."""
    from .liealg import abelian, affine_plane, heisenberg, sl2, two_dim

    two = two_dim()
    pairs = direct_sum(two, two)
    phi_sl2 = Matrix([[0, -Fraction(1, 2)], [1, 0], [0, 0]])  # X -> e, Y -> -h/2
    entries = [
        ("2d X^Y", two, Bivector.wedge(2, 0, 1)),
        ("2d 3X^Y", two, Bivector.wedge(2, 0, 1, 3)),
        ("heisenberg x^z", heisenberg(), Bivector.wedge(3, 0, 2)),
        ("heisenberg y^z", heisenberg(), Bivector.wedge(3, 1, 2)),
        ("heisenberg x^z+y^z", heisenberg(), Bivector.from_entries(3, {(0, 2): 1, (1, 2): 1})),
        ("sl2 h^e", sl2(), Bivector.wedge(3, 0, 1)),
        ("sl2 h^f", sl2(), Bivector.wedge(3, 0, 2)),
        ("sl2 pushforward of 2d", sl2(), pushforward_r(phi_sl2, Bivector.wedge(2, 0, 1), two, sl2())),
        ("abelian3 a1^a2", abelian(3), Bivector.wedge(3, 0, 1)),
        ("abelian3 generic", abelian(3), Bivector.from_entries(3, {(0, 1): 2, (0, 2): -1, (1, 2): Fraction(1, 3)})),
        ("aff+k X^Y", affine_plane(), Bivector.wedge(3, 0, 1)),
        ("aff+k X^Z", affine_plane(), Bivector.wedge(3, 0, 2)),
        ("2d+2d Frobenius", pairs, Bivector.from_entries(4, {(0, 1): 1, (2, 3): 1})),
        ("sl2 zero", sl2(), Bivector.zero(3)),
    ]
    return entries
