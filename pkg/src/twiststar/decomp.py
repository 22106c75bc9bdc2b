"""Cartan and Iwasawa decompositions of real matrix Lie algebras.

The Cartan involution is fixed to Θ(X) = −Xᵀ.  Restricted roots must be
rational; anything else raises :class:`IrrationalRoots` rather than being
approximated.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from .core.linalg import InconsistentSystem, Matrix, Vector, det, kernel_basis, solve
from .core.report import Check, Report
from .core.scalar import ONE, ZERO, Scalar, S
from .liealg import LieAlgebra, Subspace, adjoint, killing_form


class NotClosedError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ThetaNotPreserved(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class IrrationalRoots(ValueError):
    pass


class DecompositionFailed(ValueError):
    pass


@dataclass(frozen=True)
class MatrixLieAlgebra:
    ambient_size: int
    basis: tuple  # of m×m Matrix
    names: tuple = ()

    def __post_init__(self):
        m = self.ambient_size
        for B in self.basis:
            if B.shape != (m, m):
                raise ValueError(f"basis matrix has shape {B.shape}, expected {m}x{m}")
        if self.basis:
            from .core.linalg import rank

            if rank(Matrix([B.flatten() for B in self.basis])) != len(self.basis):
                raise ValueError("basis matrices are linearly dependent")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"B{i + 1}" for i in range(len(self.basis))))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, X: Matrix) -> Vector:
        """Coordinates of X in the basis; raises InconsistentSystem if X is outside."""
        if not self.basis:
            if not X.is_zero():
                raise InconsistentSystem("nonzero matrix in the zero algebra")
            return ()
        return solve(Matrix.from_columns([B.flatten() for B in self.basis]), X.flatten())

    def element(self, v: Sequence[Scalar]) -> Matrix:
        m = self.ambient_size
        out = Matrix.zeros(m, m)
        for c, B in zip(v, self.basis):
            if c:
                out = out + B.scale(c)
        return out


def matrix_to_abstract(M: MatrixLieAlgebra) -> LieAlgebra:
    """Structure constants from [B_i, B_j] = Σ_k C_ij^k B_k."""
    n = M.dim
    C = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i, j in combinations(range(n), 2):
        comm = M.basis[i].commutator(M.basis[j])
        try:
            c = M.coords(comm)
        except InconsistentSystem:
            raise NotClosedError(f"[B{i + 1}, B{j + 1}] is outside the span", witness=(i, j)) from None
        for k in range(n):
            C[i][j][k] = c[k]
            C[j][i][k] = -c[k]
    return LieAlgebra(tuple(tuple(tuple(r) for r in Ci) for Ci in C), M.names)


def theta_matrix(M: MatrixLieAlgebra) -> Matrix:
    """Θ(X) = −Xᵀ in basis coordinates (column i = coordinates of Θ(B_i))."""
    cols = []
    for i, B in enumerate(M.basis):
        try:
            cols.append(M.coords(-B.T))
        except InconsistentSystem:
            raise ThetaNotPreserved(f"−B{i + 1}ᵀ is outside the algebra", witness=i) from None
    return Matrix.from_columns(cols, M.dim)


def _bracket_in(L: LieAlgebra, U: Subspace, V: Subspace, W: Subspace) -> bool:
    return all(W.contains(L.bracket(u, v)) for u in U.basis for v in V.basis)


def cartan_relations(L: LieAlgebra, k: Subspace, p: Subspace) -> Report:
    return Report(
        "cartan relations",
        (
            Check("[k,k]⊆k", _bracket_in(L, k, k, k)),
            Check("[k,p]⊆p", _bracket_in(L, k, p, p)),
            Check("[p,p]⊆k", _bracket_in(L, p, p, k)),
        ),
    )


def cartan_decomposition(M: MatrixLieAlgebra) -> tuple[Subspace, Subspace]:
    """(k, p): the +1 and −1 eigenspaces of Θ, in basis coordinates."""
    n = M.dim
    T = theta_matrix(M)
    Id = Matrix.identity(n)
    k = Subspace.span(kernel_basis(T - Id), n) if n else Subspace.zero(0)
    p = Subspace.span(kernel_basis(T + Id), n) if n else Subspace.zero(0)
    if k.dim + p.dim != n:
        raise ThetaNotPreserved("Θ is not an involution on this algebra")
    L = matrix_to_abstract(M)
    rel = cartan_relations(L, k, p)
    if not rel.passed:
        raise ThetaNotPreserved("Θ is not a Lie algebra automorphism", witness=[c.name for c in rel.failures()])
    return k, p


def centralizer_in(L: LieAlgebra, a: Subspace, p: Subspace) -> Subspace:
    """{x ∈ p : [x, y] = 0 for all y ∈ a}."""
    if p.dim == 0:
        return p
    if a.dim == 0:
        return p
    # x = Σ c_s p_s; conditions Σ c_s [p_s, a_t] = 0
    blocks = []
    for y in a.basis:
        cols = [L.bracket(ps, y) for ps in p.basis]
        blocks.append(Matrix.from_columns(cols, L.dim))
    ker = kernel_basis(Matrix.vstack(blocks))
    vecs = [tuple(sum((c * ps[i] for c, ps in zip(v, p.basis)), ZERO) for i in range(L.dim)) for v in ker]
    return Subspace.span(vecs, L.dim)


def maximal_abelian_in_p(L: LieAlgebra, p: Subspace) -> Subspace:
    """Greedy: adjoin commuting p-elements until the centralizer of a in p is a itself."""
    a = Subspace.zero(L.dim)
    while True:
        z = centralizer_in(L, a, p)
        if z.dim == a.dim:
            return a
        new = next(v for v in z.basis if not a.contains(v))
        a = Subspace.span(list(a.basis) + [new], L.dim)


# characteristic polynomial and rational roots ------------------------------

def charpoly(A: Matrix) -> list[Scalar]:
    """Coefficients c_0..c_n of det(tI − A) = Σ c_k t^k (Faddeev–LeVerrier)."""
    n = A.nrows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    Mk = Matrix.zeros(n, n)
    Id = Matrix.identity(n)
    for k in range(1, n + 1):
        Mk = A @ Mk + Id.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(A @ Mk).trace() / k
    return coeffs


def rational_roots(coeffs: Sequence[Scalar]) -> dict[Fraction, int]:
    """Rational roots with multiplicity of a polynomial with rational coefficients."""
    if any(not c.is_real() for c in coeffs):
        raise IrrationalRoots("polynomial has non-real coefficients")
    poly = [c.re for c in coeffs]
    while poly and poly[-1] == 0:
        poly.pop()
    roots: dict[Fraction, int] = {}
    while len(poly) > 1 and poly[0] == 0:
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
        poly = poly[1:]
    while len(poly) > 1:
        denom = 1
        for c in poly:
            denom = denom * c.denominator // gcd(denom, c.denominator)
        ints = [int(c * denom) for c in poly]
        found = None
        for q in _divisors(abs(ints[-1])):
            for pnum in _divisors(abs(ints[0])):
                for cand in (Fraction(pnum, q), Fraction(-pnum, q)):
                    if _eval(poly, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots[found] = roots.get(found, 0) + 1
        poly = _deflate(poly, found)
    return roots


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0] if n else [1]


def _eval(poly, x):
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _deflate(poly, root):
    # divide by (t - root); poly is low-to-high
    n = len(poly) - 1
    out = [Fraction(0)] * n
    carry = Fraction(0)
    for k in range(n, 0, -1):
        carry = poly[k] + carry * root
        out[k - 1] = carry
    return out


# Iwasawa ---------------------------------------------------------------------

@dataclass(frozen=True)
class IwasawaResult:
    k_basis: tuple
    a_basis: tuple
    p_basis: tuple
    n_basis: tuple
    restricted_roots: tuple  # ((functional on a as tuple of Fractions), multiplicity)
    k: Subspace
    a: Subspace
    p: Subspace
    n: Subspace

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.k.dim, self.a.dim, self.n.dim)


def _joint_eigenspaces(L: LieAlgebra, a: Subspace):
    """Refine g by the commuting operators ad(a_1), ..., ad(a_r)."""
    spaces = [((), Subspace.whole(L.dim))]
    for h in a.basis:
        A = adjoint(L, h)
        roots = rational_roots(charpoly(A))
        if sum(roots.values()) != L.dim:
            raise IrrationalRoots("restricted-root eigenvalues are not all rational")
        refined = []
        for label, V in spaces:
            for lam in sorted(roots):
                shifted = A - Matrix.identity(L.dim).scale(Scalar(lam))
                ker = Subspace.span(kernel_basis(shifted), L.dim)
                W = _intersect(V, ker, L.dim)
                if W.dim:
                    refined.append((label + (lam,), W))
        spaces = refined
    total = sum(V.dim for _, V in spaces)
    if total != L.dim:
        raise DecompositionFailed(f"joint eigenspaces span {total} of {L.dim} dimensions (ad(a) not diagonalizable)")
    return spaces


def _intersect(U: Subspace, V: Subspace, n: int) -> Subspace:
    if not U.dim or not V.dim:
        return Subspace.zero(n)
    # solve Σ x_i u_i = Σ y_j v_j
    cols = list(U.basis) + [tuple(-c for c in v) for v in V.basis]
    ker = kernel_basis(Matrix.from_columns(cols, n))
    vecs = [tuple(sum((x * u[t] for x, u in zip(kv[: U.dim], U.basis)), ZERO) for t in range(n)) for kv in ker]
    return Subspace.span(vecs, n)


def _is_positive(label: tuple) -> bool:
    for x in label:
        if x:
            return x > 0
    return False


def lower_central_series_terminates(L: LieAlgebra, n_sub: Subspace) -> bool:
    current = n_sub
    for _ in range(L.dim + 1):
        if current.dim == 0:
            return True
        nxt = Subspace.span([L.bracket(x, y) for x in n_sub.basis for y in current.basis], L.dim)
        if nxt.dim == current.dim:
            return False
        current = nxt
    return current.dim == 0


def iwasawa(M: MatrixLieAlgebra) -> IwasawaResult:
    """g = k ⊕ a ⊕ n with n the sum of positive restricted root spaces.

    Positivity is lexicographic in the computed basis of a.  The maximal
    abelian a is the greedy one and is not unique in general.
    """
    L = matrix_to_abstract(M)
    k, p = cartan_decomposition(M)
    a = maximal_abelian_in_p(L, p)
    spaces = _joint_eigenspaces(L, a) if a.dim else [((), Subspace.whole(L.dim))]
    pos_vectors = []
    roots = []
    for label, V in spaces:
        if any(label):
            roots.append((label, V.dim))
        if _is_positive(label):
            pos_vectors.extend(V.basis)
    n_sub = Subspace.span(pos_vectors, L.dim)
    total = Subspace.span(list(k.basis) + list(a.basis) + list(n_sub.basis), L.dim)
    if total.dim != L.dim or k.dim + a.dim + n_sub.dim != L.dim:
        raise DecompositionFailed(f"dim k + dim a + dim n = {k.dim}+{a.dim}+{n_sub.dim}, dim g = {L.dim}")
    res = IwasawaResult(
        k_basis=tuple(M.element(v) for v in k.basis),
        a_basis=tuple(M.element(v) for v in a.basis),
        p_basis=tuple(M.element(v) for v in p.basis),
        n_basis=tuple(M.element(v) for v in n_sub.basis),
        restricted_roots=tuple(roots),
        k=k,
        a=a,
        p=p,
        n=n_sub,
    )
    rep = iwasawa_checks(L, res)
    if not rep.passed:
        raise DecompositionFailed("; ".join(c.name for c in rep.failures()))
    return res


def iwasawa_checks(L: LieAlgebra, res: IwasawaResult) -> Report:
    a, n_sub = res.a, res.n
    an = Subspace.span(list(a.basis) + list(n_sub.basis), L.dim)
    return Report(
        "iwasawa",
        (
            Check("dim k + dim a + dim n = dim g", res.k.dim + a.dim + n_sub.dim == L.dim),
            Check("[a,a]=0", all(not any(L.bracket(x, y)) for x in a.basis for y in a.basis)),
            Check("[a,n]⊆n", _bracket_in(L, a, n_sub, n_sub)),
            Check("n nilpotent", lower_central_series_terminates(L, n_sub)),
            Check("a⊆p", res.p.contains_subspace(a)),
            Check("a⊕n subalgebra", _bracket_in(L, an, an, an)),
        ),
    )


def b_theta(M: MatrixLieAlgebra) -> Matrix:
    """Gram matrix of B_Θ(x, y) = −κ(x, Θ y)."""
    L = matrix_to_abstract(M)
    K = killing_form(L).matrix
    return -(K @ theta_matrix(M))


def leading_minors(A: Matrix) -> list[Scalar]:
    return [det(Matrix([r[:k] for r in A.rows[:k]])) for k in range(1, A.nrows + 1)]


def is_positive_definite(A: Matrix) -> bool:
    """Sylvester's criterion on a real symmetric matrix, exactly."""
    if not A.is_symmetric() or any(not x.is_real() for r in A.rows for x in r):
        return False
    return all(m.re > 0 for m in leading_minors(A))


# catalog ---------------------------------------------------------------------

def _E(m: int, i: int, j: int, c=1) -> Matrix:
    rows = [[ZERO] * m for _ in range(m)]
    rows[i][j] = S(c)
    return Matrix(rows)


def so3_matrices() -> MatrixLieAlgebra:
    """Rotation generators L_i with (L_i)_{jk} = −ε_{ijk}."""
    L1 = _E(3, 2, 1) + _E(3, 1, 2, -1)
    L2 = _E(3, 0, 2) + _E(3, 2, 0, -1)
    L3 = _E(3, 1, 0) + _E(3, 0, 1, -1)
    return MatrixLieAlgebra(3, (L1, L2, L3), ("L1", "L2", "L3"))


def sl2r_matrices() -> MatrixLieAlgebra:
    h = _E(2, 0, 0) + _E(2, 1, 1, -1)
    return MatrixLieAlgebra(2, (h, _E(2, 0, 1), _E(2, 1, 0)), ("h", "e", "f"))


def so13_matrices() -> MatrixLieAlgebra:
    """so(1,3) = {[[0, aᵀ], [a, A]] : a ∈ R³, Aᵀ = −A}: three boosts, three rotations."""
    boosts = [_E(4, 0, i) + _E(4, i, 0) for i in (1, 2, 3)]
    rots = [
        _E(4, 3, 2) + _E(4, 2, 3, -1),
        _E(4, 1, 3) + _E(4, 3, 1, -1),
        _E(4, 2, 1) + _E(4, 1, 2, -1),
    ]
    return MatrixLieAlgebra(4, tuple(boosts + rots), ("K1", "K2", "K3", "J1", "J2", "J3"))


def so12_matrices() -> MatrixLieAlgebra:
    """so(1,2): two boosts and one rotation, isomorphic to sl(2,R)."""
    K1 = _E(3, 0, 1) + _E(3, 1, 0)
    K2 = _E(3, 0, 2) + _E(3, 2, 0)
    J = _E(3, 2, 1) + _E(3, 1, 2, -1)
    return MatrixLieAlgebra(3, (K1, K2, J), ("K1", "K2", "J"))


def sl3r_matrices() -> MatrixLieAlgebra:
    """sl(3,R) in the basis h1, h2, E_ij (i != j)."""
    h1 = _E(3, 0, 0) + _E(3, 1, 1, -1)
    h2 = _E(3, 1, 1) + _E(3, 2, 2, -1)
    offdiag = [(i, j) for i in range(3) for j in range(3) if i != j]
    names = ("h1", "h2") + tuple(f"E{i + 1}{j + 1}" for i, j in offdiag)
    return MatrixLieAlgebra(3, (h1, h2) + tuple(_E(3, i, j) for i, j in offdiag), names)


def matrix_catalog() -> dict[str, MatrixLieAlgebra]:
    return {
        "so3": so3_matrices(),
        "sl2r": sl2r_matrices(),
        "so12": so12_matrices(),
        "so13": so13_matrices(),
        "sl3r": sl3r_matrices(),
    }
