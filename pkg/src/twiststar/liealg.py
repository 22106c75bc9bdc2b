"""Finite-dimensional Lie algebras given by structure constants.

``C[i][j][k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.  Antisymmetry is
validated on construction; the Jacobi identity is validated by
:meth:`LieAlgebra.from_brackets` unless explicitly disabled (so that
:func:`check_jacobi` can report on broken input).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .core.linalg import (
    InconsistentSystem,
    Matrix,
    ShapeError,
    Vector,
    coordinates,
    det,
    in_span,
    kernel_basis,
    kron,
    span_basis,
    unit_vector,
    zero_vector,
)
from .core.report import Check
from .core.scalar import ZERO, Scalar, ScalarLike, S


class InvalidAlgebra(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotClosed(ValueError):
    """A bracket left the subspace; ``witness`` is the offending index pair."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class LieAlgebra:
    C: tuple
    basis: tuple[str, ...]

    def __post_init__(self):
        n = len(self.basis)
        C = tuple(tuple(tuple(S(c) for c in Cij) for Cij in Ci) for Ci in self.C)
        if len(C) != n or any(len(Ci) != n or any(len(Cij) != n for Cij in Ci) for Ci in C):
            raise InvalidAlgebra(f"structure constants must have shape {n}x{n}x{n}")
        object.__setattr__(self, "C", C)
        for i in range(n):
            for j in range(i, n):
                for k in range(n):
                    if C[i][j][k] != -C[j][i][k]:
                        raise InvalidAlgebra(
                            f"bracket not antisymmetric at ({i},{j}) component {k}", witness=(i, j, k)
                        )

    @classmethod
    def from_brackets(
        cls,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, ScalarLike] | Sequence[ScalarLike]],
        basis: Sequence[str] | None = None,
        validate: bool = True,
    ) -> LieAlgebra:
        """Build from ``{(i, j): result}`` with ``i != j``; the (j, i) entry is implied."""
        C = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        seen = set()
        for (i, j), res in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise InvalidAlgebra(f"bracket index ({i},{j}) out of range for dim {dim}")
            if i == j:
                raise InvalidAlgebra(f"[e{i},e{i}] must be zero and cannot be specified")
            if (i, j) in seen or (j, i) in seen:
                raise InvalidAlgebra(f"bracket ({i},{j}) given twice")
            seen.add((i, j))
            items = res.items() if isinstance(res, Mapping) else enumerate(res)
            for k, c in items:
                c = S(c)
                C[i][j][k] = c
                C[j][i][k] = -c
        names = tuple(basis) if basis is not None else tuple(f"e{i + 1}" for i in range(dim))
        L = cls(tuple(tuple(tuple(r) for r in Ci) for Ci in C), names)
        if validate:
            report = check_jacobi(L)
            if not report.passed:
                raise InvalidAlgebra("Jacobi identity fails", witness=report.witnesses)
        return L

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _nonzero(self) -> tuple:
        n = self.dim
        return tuple(
            (i, j, k, self.C[i][j][k])
            for i in range(n)
            for j in range(n)
            for k in range(n)
            if self.C[i][j][k]
        )

    def bracket(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise ShapeError("vector length does not match algebra dimension")
        out = [ZERO] * self.dim
        for i, j, k, c in self._nonzero:
            if x[i] and y[j]:
                out[k] = out[k] + x[i] * y[j] * c
        return tuple(out)

    def e(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    @cached_property
    def ad2_basis(self) -> tuple:
        """ad^{(2)}_{e_i} for every basis index (cached)."""
        return tuple(ad_power(self, self.e(i), 2) for i in range(self.dim))

    @cached_property
    def ad3_basis(self) -> tuple:
        return tuple(ad_power(self, self.e(i), 3) for i in range(self.dim))

    def is_abelian(self) -> bool:
        return not self._nonzero

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, basis={self.basis})"


@dataclass(frozen=True)
class Subspace:
    """A subspace of k^n given by independent basis vectors (parent coordinates)."""

    ambient: int
    basis: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence[ScalarLike]], ambient: int) -> Subspace:
        vs = [tuple(S(x) for x in v) for v in vectors]
        return cls(ambient, tuple(span_basis(vs, ambient)))

    @classmethod
    def whole(cls, n: int) -> Subspace:
        return cls(n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[Scalar]) -> bool:
        return in_span(self.basis, v)

    def contains_subspace(self, other: Subspace) -> bool:
        return all(self.contains(v) for v in other.basis)

    def coords(self, v: Sequence[Scalar]) -> Vector:
        return coordinates(self.basis, v)

    def same_as(self, other: Subspace) -> bool:
        return self.dim == other.dim and self.contains_subspace(other)

    def __repr__(self):
        vs = ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in self.basis)
        return f"Subspace(dim={self.dim}, [{vs}])"


@dataclass(frozen=True)
class BilinearForm:
    matrix: Matrix

    def __post_init__(self):
        if not self.matrix.is_symmetric():
            raise ValueError("bilinear form matrix must be symmetric")

    def __call__(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Scalar:
        Ky = self.matrix.apply(y)
        acc = ZERO
        for a, b in zip(x, Ky):
            if a and b:
                acc = acc + a * b
        return acc

    def determinant(self) -> Scalar:
        return det(self.matrix)


# ---------------------------------------------------------------------------

def check_jacobi(L: LieAlgebra) -> Check:
    """Evaluate the Jacobi identity on every basis triple i<j<k.

    Witnesses are ``(i, j, k, l, value)`` for each nonzero component ``l`` of
    ``[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]``.
    """
    n, C = L.dim, L.C
    bad = []
    for i, j, k in combinations(range(n), 3):
        for l in range(n):
            acc = ZERO
            for m in range(n):
                if C[j][k][m] and C[i][m][l]:
                    acc += C[j][k][m] * C[i][m][l]
                if C[i][j][m] and C[k][m][l]:
                    acc += C[i][j][m] * C[k][m][l]
                if C[k][i][m] and C[j][m][l]:
                    acc += C[k][i][m] * C[j][m][l]
            if acc:
                bad.append((i, j, k, l, acc))
    return Check("jacobi", not bad, tuple(bad))


def adjoint(L: LieAlgebra, x: Sequence[ScalarLike]) -> Matrix:
    """Matrix of ad(x) = [x, -]; column j holds the coordinates of [x, e_j]."""
    x = tuple(S(v) for v in x)
    if len(x) != L.dim:
        raise ShapeError(f"element has length {len(x)}, algebra has dim {L.dim}")
    n = L.dim
    rows = [[ZERO] * n for _ in range(n)]
    for i, j, k, c in L._nonzero:
        if x[i]:
            rows[k][j] += x[i] * c
    return Matrix(rows)


def ad_power(L: LieAlgebra, x: Sequence[ScalarLike], n: int) -> Matrix:
    """Leibniz extension of ad(x) to g^{⊗n}: sum of ad(x) in each tensor slot."""
    if n not in (1, 2, 3):
        raise ValueError(f"ad_power supports n in {{2, 3}} (and 1), got {n}")
    A = adjoint(L, x)
    if n == 1:
        return A
    Id = Matrix.identity(L.dim)
    if n == 2:
        return kron(A, Id) + kron(Id, A)
    return kron(kron(A, Id), Id) + kron(kron(Id, A), Id) + kron(Id, kron(Id, A))


def killing_form(L: LieAlgebra) -> BilinearForm:
    ads = [adjoint(L, L.e(i)) for i in range(L.dim)]
    n = L.dim
    K = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            K[i][j] = K[j][i] = (ads[i] @ ads[j]).trace()
    return BilinearForm(Matrix(K) if n else Matrix.zeros(0, 0))


def killing_radical(L: LieAlgebra) -> Subspace:
    """Kernel of the Killing matrix; always an ideal (checked)."""
    K = killing_form(L).matrix
    S_ = Subspace.span(kernel_basis(K), L.dim) if L.dim else Subspace.zero(0)
    if not is_ideal(L, S_):
        raise AssertionError("Killing radical is not an ideal; structure constants are inconsistent")
    return S_


def is_semisimple(L: LieAlgebra) -> bool:
    """Killing-form non-degeneracy (Cartan's criterion)."""
    return killing_form(L).determinant() != 0


def derived_algebra(L: LieAlgebra) -> Subspace:
    n = L.dim
    return Subspace.span([L.C[i][j] for i in range(n) for j in range(i + 1, n)], n)


def center(L: LieAlgebra) -> Subspace:
    n = L.dim
    if n == 0:
        return Subspace.zero(0)
    stacked = Matrix.vstack([adjoint(L, L.e(i)) for i in range(n)])
    return Subspace.span(kernel_basis(stacked), n)


def is_subalgebra(L: LieAlgebra, S_: Subspace) -> bool:
    return _closure_witness(L, S_) is None


def _closure_witness(L: LieAlgebra, S_: Subspace):
    for a in range(S_.dim):
        for b in range(a + 1, S_.dim):
            if not S_.contains(L.bracket(S_.basis[a], S_.basis[b])):
                return (a, b)
    return None


def is_ideal(L: LieAlgebra, S_: Subspace) -> bool:
    return all(S_.contains(L.bracket(L.e(i), v)) for i in range(L.dim) for v in S_.basis)


def subalgebra_closure(L: LieAlgebra, seed: Iterable[Sequence[ScalarLike]]) -> Subspace:
    """Smallest bracket-closed subspace containing ``seed``."""
    current = Subspace.span(seed, L.dim)
    while True:
        new = [L.bracket(u, v) for u, v in combinations(current.basis, 2)]
        grown = Subspace.span(list(current.basis) + new, L.dim)
        if grown.dim == current.dim:
            return current
        current = grown


def restrict(L: LieAlgebra, S_: Subspace, names: Sequence[str] | None = None) -> LieAlgebra:
    """The bracket of L expressed in the basis of a bracket-closed subspace."""
    k = S_.dim
    C = [[[ZERO] * k for _ in range(k)] for _ in range(k)]
    for a in range(k):
        for b in range(a + 1, k):
            br = L.bracket(S_.basis[a], S_.basis[b])
            try:
                c = S_.coords(br)
            except InconsistentSystem:
                raise NotClosed(f"[b{a},b{b}] leaves the subspace", witness=(a, b)) from None
            for m in range(k):
                C[a][b][m] = c[m]
                C[b][a][m] = -c[m]
    if names is None:
        names = [_describe(L, v) for v in S_.basis]
    return LieAlgebra(tuple(tuple(tuple(r) for r in Ca) for Ca in C), tuple(names))


def _describe(L: LieAlgebra, v: Sequence[Scalar]) -> str:
    terms = []
    for c, name in zip(v, L.basis):
        if not c:
            continue
        if c == 1:
            terms.append(name)
        elif c == -1:
            terms.append("-" + name)
        else:
            terms.append(f"({c})*{name}")
    return "+".join(terms).replace("+-", "-") or "0"


def is_homomorphism(src: LieAlgebra, dst: LieAlgebra, phi: Matrix):
    """None if ``phi`` (columns = images of src basis) preserves brackets, else a witness pair."""
    if phi.shape != (dst.dim, src.dim):
        raise ShapeError(f"map must be {dst.dim}x{src.dim}, got {phi.shape}")
    cols = phi.columns()
    for i in range(src.dim):
        for j in range(i + 1, src.dim):
            lhs = phi.apply(src.C[i][j])
            rhs = dst.bracket(cols[i], cols[j])
            if lhs != rhs:
                return (i, j)
    return None


# catalog ------------------------------------------------------------------

def abelian(n: int) -> LieAlgebra:
    return LieAlgebra.from_brackets(n, {}, basis=[f"a{i + 1}" for i in range(n)])


def two_dim() -> LieAlgebra:
    """The non-abelian 2-dimensional algebra [X, Y] = X."""
    return LieAlgebra.from_brackets(2, {(0, 1): {0: 1}}, basis=["X", "Y"])


def heisenberg() -> LieAlgebra:
    """[x, y] = z with z central."""
    return LieAlgebra.from_brackets(3, {(0, 1): {2: 1}}, basis=["x", "y", "z"])


def sl2() -> LieAlgebra:
    """Basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return LieAlgebra.from_brackets(
        3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, basis=["h", "e", "f"]
    )


def so3() -> LieAlgebra:
    """[L1,L2] = L3, [L2,L3] = L1, [L3,L1] = L2."""
    return LieAlgebra.from_brackets(
        3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}, basis=["L1", "L2", "L3"]
    )


def affine_plane() -> LieAlgebra:
    """aff(1) ⊕ k: the 2D algebra plus a central direction, [X, Y] = X, Z central."""
    return LieAlgebra.from_brackets(3, {(0, 1): {0: 1}}, basis=["X", "Y", "Z"])


def direct_sum(A: LieAlgebra, B: LieAlgebra) -> LieAlgebra:
    """A ⊕ B with A's basis first; brackets between the summands vanish."""
    n, m = A.dim, B.dim
    table = {}
    for (i, j, k, c) in A._nonzero:
        if i < j:
            table.setdefault((i, j), {})[k] = c
    for (i, j, k, c) in B._nonzero:
        if i < j:
            table.setdefault((n + i, n + j), {})[n + k] = c
    return LieAlgebra.from_brackets(n + m, table, basis=list(A.basis) + [f"{b}'" for b in B.basis])


def catalog() -> dict[str, LieAlgebra]:
    return {
        "2d": two_dim(),
        "heisenberg": heisenberg(),
        "sl2": sl2(),
        "so3": so3(),
        "abelian3": abelian(3),
    }
