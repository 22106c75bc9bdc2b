"""Chevalley–Eilenberg complex in degrees 0..3.

Cochains in ``C^n(g, V) = Hom(Λ^n g, V)`` are flattened with the wedge basis
``e_{i1}∧...∧e_{in}`` (``i1 < ... < in``, lexicographic) as the outer index and
the V-coordinate as the inner one: position ``w * dim V + a``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import comb

from .core.linalg import Matrix, Vector, kernel_basis, rank
from .core.report import Check
from .core.scalar import ZERO
from .liealg import LieAlgebra, Subspace, ad_power, adjoint

MAX_DEGREE = 3


class ModuleKind(str, Enum):
    TRIVIAL = "trivial"
    ADJOINT = "adjoint"
    ADJOINT2 = "adjoint2"


@dataclass(frozen=True)
class GModule:
    kind: ModuleKind
    action: tuple  # one Matrix per basis element of g

    @property
    def dim(self) -> int:
        return self.action[0].nrows if self.action else 0


def make_module(L: LieAlgebra, kind: ModuleKind | str) -> GModule:
    kind = ModuleKind(kind)
    if kind is ModuleKind.TRIVIAL:
        action = tuple(Matrix.zeros(1, 1) for _ in range(L.dim))
    elif kind is ModuleKind.ADJOINT:
        action = tuple(adjoint(L, L.e(i)) for i in range(L.dim))
    else:
        action = tuple(ad_power(L, L.e(i), 2) for i in range(L.dim))
    return GModule(kind, action)


def check_representation(L: LieAlgebra, M: GModule) -> Check:
    """ρ_[e_i,e_j] = ρ_i ρ_j − ρ_j ρ_i on every basis pair."""
    bad = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = Matrix.zeros(M.dim, M.dim)
            for k, c in enumerate(L.C[i][j]):
                if c:
                    lhs = lhs + M.action[k].scale(c)
            if lhs != M.action[i].commutator(M.action[j]):
                bad.append((i, j))
    return Check("representation", not bad, tuple(bad))


@dataclass(frozen=True)
class Cochain:
    degree: int
    coefficients: Matrix  # dim V rows, one column per wedge basis element

    def to_vector(self) -> Vector:
        return self.coefficients.T.flatten()

    @classmethod
    def from_vector(cls, degree: int, v, dim_g: int, dim_v: int) -> "Cochain":
        w = comb(dim_g, degree)
        return cls(degree, Matrix.reshape(tuple(v), w, dim_v).T if w else Matrix.zeros(dim_v, 0))


def wedge_basis(dim_g: int, n: int) -> list[tuple[int, ...]]:
    return list(combinations(range(dim_g), n))


def _check_degree(n: int):
    if not 0 <= n <= MAX_DEGREE:
        raise ValueError(f"degree {n} outside supported range 0..{MAX_DEGREE}")


def ce_differential(L: LieAlgebra, M: GModule, n: int) -> Matrix:
    """Matrix of δ_n : C^n(g,V) → C^{n+1}(g,V).

    (δc)(x_1∧…∧x_{n+1}) = Σ_k (−1)^{k+1} x_k.c(…x̂_k…)
                          + Σ_{k<j} (−1)^{k+j} c([x_k,x_j]∧…x̂_k…x̂_j…)
    """
    _check_degree(n)
    g, d = L.dim, M.dim
    src = wedge_basis(g, n)
    dst = wedge_basis(g, n + 1)
    src_index = {w: t for t, w in enumerate(src)}
    rows = [[ZERO] * (len(src) * d) for _ in range(len(dst) * d)]
    for s, I in enumerate(dst):
        for p in range(n + 1):
            J = I[:p] + I[p + 1:]
            col0 = src_index[J] * d
            rho = M.action[I[p]].rows
            sign = 1 if p % 2 == 0 else -1
            for a in range(d):
                row = rows[s * d + a]
                for b in range(d):
                    if rho[a][b]:
                        row[col0 + b] += rho[a][b] if sign > 0 else -rho[a][b]
        for p in range(n + 1):
            for q in range(p + 1, n + 1):
                rest = I[:p] + I[p + 1:q] + I[q + 1:]
                base_sign = 1 if (p + q) % 2 == 0 else -1
                for m, c in enumerate(L.C[I[p]][I[q]]):
                    if not c or m in rest:
                        continue
                    pos = sum(1 for x in rest if x < m)
                    J = rest[:pos] + (m,) + rest[pos:]
                    coef = c if base_sign * (-1) ** pos > 0 else -c
                    col0 = src_index[J] * d
                    for a in range(d):
                        rows[s * d + a][col0 + a] += coef
    return Matrix(rows, ncols=len(src) * d)


def apply_differential(L: LieAlgebra, M: GModule, c: Cochain) -> Cochain:
    v = ce_differential(L, M, c.degree).apply(c.to_vector())
    return Cochain.from_vector(c.degree + 1, v, L.dim, M.dim)


def cohomology_dim(L: LieAlgebra, M: GModule, n: int) -> int:
    """dim H^n = dim ker δ_n − rank δ_{n−1}."""
    _check_degree(n)
    d_n = ce_differential(L, M, n)
    kernel = d_n.ncols - rank(d_n)
    image = rank(ce_differential(L, M, n - 1)) if n > 0 else 0
    return kernel - image


def invariants(L: LieAlgebra, M: GModule) -> Subspace:
    """V^g: the joint kernel of all ρ_x."""
    if M.dim == 0:
        return Subspace.zero(0)
    if L.dim == 0:
        return Subspace.whole(M.dim)
    return Subspace.span(kernel_basis(Matrix.vstack(list(M.action))), M.dim)


def check_d_squared(L: LieAlgebra, M: GModule, n: int) -> Check:
    """δ_{n+1} δ_n = 0 as an exact matrix product (needs n + 1 ≤ 3)."""
    prod = ce_differential(L, M, n + 1) @ ce_differential(L, M, n)
    bad = [(i, j) for i, r in enumerate(prod.rows) for j, x in enumerate(r) if x]
    return Check(f"d^2=0 at degree {n}", not bad, tuple(bad[:20]))
