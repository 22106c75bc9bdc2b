"""Dense exact linear algebra over Gaussian rationals.

Vectors are plain tuples of :class:`Scalar`.  Matrices are immutable
:class:`Matrix` values in row-major order.  Tensors in ``V^{⊗k}`` are stored
flattened, multi-index ``(a_1, ..., a_k)`` at position ``a_1 n^{k-1} + ... + a_k``.
"""
from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from .scalar import ONE, ZERO, Scalar, ScalarLike, S

__all__ = [
    "Vector",
    "Matrix",
    "ShapeError",
    "InconsistentSystem",
    "vector",
    "zero_vector",
    "unit_vector",
    "is_zero_vector",
    "add_vectors",
    "scale_vector",
    "dot",
    "rank",
    "det",
    "rref",
    "kernel_basis",
    "solve",
    "span_basis",
    "in_span",
    "coordinates",
    "kron",
    "braid",
    "braid_vector",
    "flat_index",
    "multi_index",
]

Vector = tuple  # tuple[Scalar, ...]


class ShapeError(ValueError):
    pass


class InconsistentSystem(ValueError):
    """Raised by :func:`solve` when the right-hand side is outside the column space."""


def vector(values: Iterable[ScalarLike]) -> Vector:
    return tuple(S(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def is_zero_vector(v: Sequence[Scalar]) -> bool:
    return not any(v)


def add_vectors(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    if len(u) != len(v):
        raise ShapeError(f"vector lengths {len(u)} and {len(v)} differ")
    return tuple(a + b for a, b in zip(u, v))


def scale_vector(c: ScalarLike, v: Sequence[Scalar]) -> Vector:
    c = S(c)
    return tuple(c * a for a in v)


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


class Matrix:
    """Immutable dense matrix of Scalars."""

    __slots__ = ("rows", "shape")

    def __init__(self, rows: Iterable[Iterable[ScalarLike]], ncols: int | None = None):
        data = tuple(tuple(S(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ShapeError("ragged rows")
            if ncols is not None and ncols != width:
                raise ShapeError("ncols disagrees with row width")
        else:
            width = ncols or 0
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "shape", (len(data), width))

    @classmethod
    def _wrap(cls, rows: tuple, ncols: int) -> Matrix:
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", rows)
        object.__setattr__(obj, "shape", (len(rows), ncols))
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zeros(cls, m: int, n: int) -> Matrix:
        return cls._wrap(tuple((ZERO,) * n for _ in range(m)), n)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls._wrap(tuple(unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[Scalar]], nrows: int | None = None) -> Matrix:
        if not cols:
            return cls.zeros(nrows or 0, 0)
        return cls._wrap(tuple(tuple(S(c[i]) for c in cols) for i in range(len(cols[0]))), len(cols))

    @classmethod
    def diagonal(cls, entries: Sequence[ScalarLike]) -> Matrix:
        n = len(entries)
        return cls._wrap(tuple(tuple(S(entries[i]) if i == j else ZERO for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return self.shape[0]

    @property
    def ncols(self) -> int:
        return self.shape[1]

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def row(self, i: int) -> Vector:
        return self.rows[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> Matrix:
        m, n = self.shape
        return Matrix._wrap(tuple(tuple(self.rows[i][j] for i in range(m)) for j in range(n)), m)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix[{self.nrows}x{self.ncols}]({body})"

    def _check_same(self, other: Matrix):
        if self.shape != other.shape:
            raise ShapeError(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix._wrap(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix._wrap(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> Matrix:
        return Matrix._wrap(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c: ScalarLike) -> Matrix:
        c = S(c)
        return Matrix._wrap(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.T.rows
            return Matrix._wrap(tuple(tuple(dot(r, c) for c in cols) for r in self.rows), other.ncols)
        return self.apply(other)

    def apply(self, v: Sequence[Scalar]) -> Vector:
        if len(v) != self.ncols:
            raise ShapeError(f"matrix with {self.ncols} columns applied to vector of length {len(v)}")
        return tuple(dot(r, v) for r in self.rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def trace(self) -> Scalar:
        if not self.is_square():
            raise ShapeError("trace of non-square matrix")
        acc = ZERO
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_antisymmetric(self) -> bool:
        return self.is_square() and self == -self.T

    def commutator(self, other: Matrix) -> Matrix:
        return self @ other - other @ self

    def flatten(self) -> Vector:
        return tuple(x for r in self.rows for x in r)

    @classmethod
    def reshape(cls, v: Sequence[Scalar], m: int, n: int) -> Matrix:
        if len(v) != m * n:
            raise ShapeError(f"cannot reshape length {len(v)} to {m}x{n}")
        return cls._wrap(tuple(tuple(v[i * n:(i + 1) * n]) for i in range(m)), n)

    @classmethod
    def vstack(cls, blocks: Sequence[Matrix]) -> Matrix:
        if not blocks:
            raise ShapeError("nothing to stack")
        n = blocks[0].ncols
        if any(b.ncols != n for b in blocks):
            raise ShapeError("column counts differ")
        return cls._wrap(tuple(r for b in blocks for r in b.rows), n)


# elimination ----------------------------------------------------------------

def _bareiss(rows: list[list[Scalar]]) -> tuple[int, Scalar, int]:
    """In-place fraction-free elimination.  Returns (rank, last pivot, swap parity)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    prev = ONE
    r = 0
    sign = 1
    for c in range(n):
        if r == m:
            break
        pivot = next((i for i in range(r, m) if rows[i][c]), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
            sign = -sign
        p = rows[r][c]
        for i in range(r + 1, m):
            a = rows[i][c]
            ri = rows[i]
            rr = rows[r]
            for j in range(c + 1, n):
                ri[j] = (p * ri[j] - a * rr[j]) / prev
            ri[c] = ZERO
        prev = p
        r += 1
    return r, prev, sign


def rank(M: Matrix) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    rows = [list(r) for r in M.rows]
    return _bareiss(rows)[0]


def det(M: Matrix) -> Scalar:
    if not M.is_square():
        raise ShapeError("determinant of non-square matrix")
    n = M.nrows
    if n == 0:
        return ONE
    rows = [list(r) for r in M.rows]
    r, last, sign = _bareiss(rows)
    if r < n:
        return ZERO
    return last if sign > 0 else -last


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in M.rows]
    m, n = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        pivot = next((i for i in range(r, m) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return Matrix._wrap(tuple(tuple(x) for x in rows), n), pivots


def kernel_basis(M: Matrix) -> list[Vector]:
    """Basis of {x : Mx = 0}; one vector per free column, with a 1 in that slot."""
    n = M.ncols
    if M.nrows == 0:
        return [unit_vector(n, j) for j in range(n)]
    R, pivots = rref(M)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -R.rows[i][f]
        basis.append(tuple(v))
    return basis


def solve(M: Matrix, b: Sequence[ScalarLike]) -> Vector:
    """One exact solution of ``M x = b`` (free variables set to zero)."""
    b = vector(b)
    if len(b) != M.nrows:
        raise ShapeError(f"right-hand side has length {len(b)}, matrix has {M.nrows} rows")
    n = M.ncols
    aug = Matrix._wrap(tuple(r + (bi,) for r, bi in zip(M.rows, b)), n + 1)
    R, pivots = rref(aug)
    if n in pivots:
        raise InconsistentSystem("no solution: right-hand side not in the column space")
    x = [ZERO] * n
    for i, p in enumerate(pivots):
        x[p] = R.rows[i][n]
    return tuple(x)


def span_basis(vectors: Sequence[Sequence[Scalar]], dim: int) -> list[Vector]:
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    vs = [tuple(v) for v in vectors]
    if not vs:
        return []
    R, pivots = rref(Matrix._wrap(tuple(vs), dim))
    return [R.rows[i] for i in range(len(pivots))]


def coordinates(basis: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> Vector:
    """Coefficients c with sum c_i basis_i = v; raises InconsistentSystem if v is outside."""
    if not basis:
        if any(v):
            raise InconsistentSystem("nonzero vector in zero subspace")
        return ()
    return solve(Matrix.from_columns(basis), v)


def in_span(basis: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> bool:
    try:
        coordinates(basis, v)
    except InconsistentSystem:
        return False
    return True


# tensors --------------------------------------------------------------------

def kron(A: Matrix, B: Matrix) -> Matrix:
    rows = []
    for ra in A.rows:
        for rb in B.rows:
            rows.append(tuple(a * b if a and b else ZERO for a in ra for b in rb))
    return Matrix._wrap(tuple(rows), A.ncols * B.ncols)


def flat_index(idx: Sequence[int], n: int) -> int:
    k = 0
    for a in idx:
        k = k * n + a
    return k


def multi_index(k: int, n: int, order: int) -> tuple[int, ...]:
    out = []
    for _ in range(order):
        k, a = divmod(k, n)
        out.append(a)
    return tuple(reversed(out))


def braid(t: Matrix) -> Matrix:
    """Flip σ(x⊗y) = y⊗x on a two-tensor stored as a square matrix t[a][b]."""
    if not t.is_square():
        raise ShapeError("braid needs a tensor in V⊗V")
    return t.T


def braid_vector(v: Sequence[Scalar], n: int) -> Vector:
    """Flip on a flattened element of V⊗V."""
    if len(v) != n * n:
        raise ShapeError("length is not n^2")
    return tuple(v[b * n + a] for a, b in product(range(n), repeat=2))
