"""Finite-dimensional Hopf algebras given by structure tensors, and Drinfel'd twists.

Tensor conventions, for a basis e_0..e_{d-1}:

* ``mult[i][j][k]``: coefficient of e_k in e_i e_j
* ``coprod[i][j][k]``: coefficient of e_j ⊗ e_k in Δ(e_i)
* ``antipode``: a Matrix whose column i holds S(e_i)
* elements of H^{⊗n} are flat vectors with row-major multi-index

Internally tensor-power elements are sparse dicts keyed by multi-index.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Sequence

from .core.linalg import InconsistentSystem, Matrix, Vector, kernel_basis, solve
from .core.report import Check, Report
from .core.scalar import ONE, ZERO, Scalar, S

Tensor3 = tuple  # nested tuple d×d×d of Scalars
Sparse = dict  # multi-index tuple -> Scalar


class HopfError(ValueError):
    pass


class NotInvertible(HopfError):
    pass


class NotATwist(HopfError):
    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report


class ModuleAxiomsFail(HopfError):
    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report


def _tensor3(t, d: int, name: str) -> Tensor3:
    try:
        out = tuple(tuple(tuple(S(x) for x in row) for row in block) for block in t)
    except TypeError:
        raise HopfError(f"{name} is not a nested 3-array") from None
    if len(out) != d or any(len(b) != d or any(len(r) != d for r in b) for b in out):
        raise HopfError(f"{name} must have shape {d}x{d}x{d}")
    return out


def _vec(v, d: int, name: str) -> Vector:
    out = tuple(S(x) for x in v)
    if len(out) != d:
        raise HopfError(f"{name} must have length {d}, got {len(out)}")
    return out


# ---------------------------------------------------------------------------
# sparse tensor-power arithmetic


def _sparse(v: Sequence[Scalar], d: int, n: int) -> Sparse:
    out = {}
    for flat, c in enumerate(v):
        if c:
            idx = []
            for _ in range(n):
                flat, r = divmod(flat, d)
                idx.append(r)
            out[tuple(reversed(idx))] = c
    return out


def _dense(x: Sparse, d: int, n: int) -> Vector:
    out = [ZERO] * (d ** n)
    for idx, c in x.items():
        flat = 0
        for i in idx:
            flat = flat * d + i
        out[flat] = c
    return tuple(out)


def _add(acc: Sparse, key, c):
    v = acc.get(key, ZERO) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _linear_at(x: Sparse, pos: int, image) -> Sparse:
    """Apply a map sending basis index i to a sparse list of (tuple, coeff) at one slot."""
    out: Sparse = {}
    for idx, c in x.items():
        for tail, a in image(idx[pos]):
            _add(out, idx[:pos] + tail + idx[pos + 1:], c * a)
    return out


def _mul_table_product(table, x: Sparse, y: Sparse) -> Sparse:
    out: Sparse = {}
    for I, a in x.items():
        for J, b in y.items():
            parts = [table[(i, j)] for i, j in zip(I, J)]
            if any(not p for p in parts):
                continue
            ab = a * b
            for combo in product(*parts):
                coef = ab
                key = []
                for k, c in combo:
                    coef = coef * c
                    key.append(k)
                _add(out, tuple(key), coef)
    return out


@dataclass(frozen=True)
class HopfAlgebra:
    dim: int
    mult: Tensor3
    unit: Vector
    coprod: Tensor3
    counit: Vector
    antipode: Matrix
    names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        d = self.dim
        if d < 1:
            raise HopfError("dimension must be positive")
        object.__setattr__(self, "mult", _tensor3(self.mult, d, "mult"))
        object.__setattr__(self, "coprod", _tensor3(self.coprod, d, "coprod"))
        object.__setattr__(self, "unit", _vec(self.unit, d, "unit"))
        object.__setattr__(self, "counit", _vec(self.counit, d, "counit"))
        Smat = self.antipode if isinstance(self.antipode, Matrix) else Matrix(self.antipode)
        if Smat.shape != (d, d):
            raise HopfError(f"antipode must be {d}x{d}")
        object.__setattr__(self, "antipode", Smat)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i}" for i in range(d)))

    # sparse caches
    @cached_property
    def _mt(self):
        d = self.dim
        return {(i, j): [(k, c) for k, c in enumerate(self.mult[i][j]) if c] for i in range(d) for j in range(d)}

    @cached_property
    def _dt(self):
        d = self.dim
        return [[((j, k), self.coprod[i][j][k]) for j in range(d) for k in range(d) if self.coprod[i][j][k]] for i in range(d)]

    @cached_property
    def _st(self):
        cols = self.antipode.columns()
        return [[((j,), c) for j, c in enumerate(col) if c] for col in cols]

    @cached_property
    def _one(self) -> Sparse:
        return _sparse(self.unit, self.dim, 1)

    def one(self, n: int = 1) -> Sparse:
        out: Sparse = {(): ONE}
        for _ in range(n):
            out = {I + J: a * b for I, a in out.items() for J, b in self._one.items()}
        return out

    # dense API on H
    def multiply(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
        return _dense(self.mul(_sparse(x, self.dim, 1), _sparse(y, self.dim, 1)), self.dim, 1)

    def e(self, i: int) -> Vector:
        return tuple(ONE if k == i else ZERO for k in range(self.dim))

    # sparse API on H^{⊗n}
    def mul(self, x: Sparse, y: Sparse) -> Sparse:
        return _mul_table_product(self._mt, x, y)

    def delta_at(self, x: Sparse, pos: int) -> Sparse:
        return _linear_at(x, pos, lambda i: self._dt[i])

    def eps_at(self, x: Sparse, pos: int) -> Sparse:
        return _linear_at(x, pos, lambda i: [((), self.counit[i])] if self.counit[i] else [])

    def s_at(self, x: Sparse, pos: int) -> Sparse:
        return _linear_at(x, pos, lambda i: self._st[i])

    def mul_slots(self, x: Sparse, pos: int) -> Sparse:
        """Multiply slots pos and pos+1 together."""
        out: Sparse = {}
        for idx, c in x.items():
            for k, a in self._mt[(idx[pos], idx[pos + 1])]:
                _add(out, idx[:pos] + (k,) + idx[pos + 2:], c * a)
        return out

    def basis_sparse(self, *idx: int) -> Sparse:
        return {tuple(idx): ONE}


def _tensor(x: Sparse, y: Sparse) -> Sparse:
    return {I + J: a * b for I, a in x.items() for J, b in y.items()}


def _swap01(x: Sparse) -> Sparse:
    return {(I[1], I[0]) + I[2:]: c for I, c in x.items()}


# ---------------------------------------------------------------------------
# axioms


def _compare(name, pairs) -> Check:
    bad = tuple(w for w, lhs, rhs in pairs if lhs != rhs)
    return Check(name, not bad, bad[:20])


def check_hopf_axioms(H: HopfAlgebra) -> Report:
    """Every axiom family as an exact identity on basis elements."""
    d = H.dim
    b = H.basis_sparse
    one = H.one()
    idx = range(d)
    checks = [
        _compare("associativity", (
            ((i, j, k), H.mul(H.mul(b(i), b(j)), b(k)), H.mul(b(i), H.mul(b(j), b(k))))
            for i in idx for j in idx for k in idx
        )),
        _compare("unit", (
            ((i,), H.mul(one, b(i)), b(i)) for i in idx
        )),
        _compare("unit (right)", (
            ((i,), H.mul(b(i), one), b(i)) for i in idx
        )),
        _compare("coassociativity", (
            ((i,), H.delta_at(H.delta_at(b(i), 0), 0), H.delta_at(H.delta_at(b(i), 0), 1)) for i in idx
        )),
        _compare("counit", (
            ((i,), H.eps_at(H.delta_at(b(i), 0), 0), b(i)) for i in idx
        )),
        _compare("counit (right)", (
            ((i,), H.eps_at(H.delta_at(b(i), 0), 1), b(i)) for i in idx
        )),
        _compare("coproduct multiplicative", (
            ((i, j), H.delta_at(H.mul(b(i), b(j)), 0), H.mul(H.delta_at(b(i), 0), H.delta_at(b(j), 0)))
            for i in idx for j in idx
        )),
        _compare("coproduct unital", [((), H.delta_at(one, 0), H.one(2))]),
        _compare("counit multiplicative", (
            ((i, j), H.eps_at(H.mul(b(i), b(j)), 0), {(): H.counit[i] * H.counit[j]} if H.counit[i] * H.counit[j] else {})
            for i in idx for j in idx
        )),
        _compare("counit unital", [((), H.eps_at(one, 0), {(): ONE})]),
        _compare("antipode", (
            ((i,), H.mul_slots(H.s_at(H.delta_at(b(i), 0), 0), 0), _scaled(one, H.counit[i])) for i in idx
        )),
        _compare("antipode (right)", (
            ((i,), H.mul_slots(H.s_at(H.delta_at(b(i), 0), 1), 0), _scaled(one, H.counit[i])) for i in idx
        )),
    ]
    return Report("hopf axioms", tuple(checks))


def _scaled(x: Sparse, c: Scalar) -> Sparse:
    return {k: v * c for k, v in x.items() if v * c}


def antipode_properties(H: HopfAlgebra) -> Report:
    d = H.dim
    b = H.basis_sparse
    idx = range(d)
    one = H.one()
    checks = [
        _compare("S(gh) = S(h)S(g)", (
            ((g, h), H.s_at(H.mul(b(g), b(h)), 0), H.mul(H.s_at(b(h), 0), H.s_at(b(g), 0)))
            for g in idx for h in idx
        )),
        _compare("S(1) = 1", [((), H.s_at(one, 0), one)]),
        _compare("(S⊗S)Δ = σΔS", (
            ((i,), H.s_at(H.s_at(H.delta_at(b(i), 0), 0), 1), _swap01(H.delta_at(H.s_at(b(i), 0), 0)))
            for i in idx
        )),
        _compare("εS = ε", (
            ((i,), H.eps_at(H.s_at(b(i), 0), 0), H.eps_at(b(i), 0)) for i in idx
        )),
    ]
    return Report("antipode properties", tuple(checks))


def solve_antipode(H: HopfAlgebra) -> tuple[bool, Matrix | None]:
    """Solve m(S⊗1)Δ = ηε = m(1⊗S)Δ for S as a linear system in its d² entries.

    Returns (unique, solution); solution is None when the system is inconsistent.
    Unknown ``S[j][a]`` sits at position ``j * d + a``.
    """
    d = H.dim
    rows, rhs = [], []
    for i in range(d):
        target = [H.counit[i] * u for u in H.unit]
        for side in (0, 1):
            eq = [[ZERO] * (d * d) for _ in range(d)]
            for (a, b2), c in H._dt[i]:
                moved, fixed = (a, b2) if side == 0 else (b2, a)
                for j in range(d):
                    pair = (j, fixed) if side == 0 else (fixed, j)
                    for k, m in H._mt[pair]:
                        eq[k][j * d + moved] += c * m
            rows.extend(eq)
            rhs.extend(target)
    A = Matrix(rows, ncols=d * d)
    try:
        sol = solve(A, tuple(rhs))
    except InconsistentSystem:
        return False, None
    unique = not kernel_basis(A)
    return unique, Matrix.reshape(sol, d, d)


# ---------------------------------------------------------------------------
# inverses and twists


def invert(H: HopfAlgebra, x: Sequence[Scalar], n: int = 1) -> Vector:
    """Two-sided inverse in H^{⊗n} via exact solve of left multiplication."""
    d = H.dim
    xs = _sparse(x, d, n)
    size = d ** n
    cols = []
    for col in range(size):
        e = _sparse(tuple(ONE if t == col else ZERO for t in range(size)), d, n)
        cols.append(_dense(H.mul(xs, e), d, n))
    Lx = Matrix.from_columns(cols, size)
    one = _dense(H.one(n), d, n)
    try:
        y = solve(Lx, one)
    except InconsistentSystem:
        raise NotInvertible("element is not invertible") from None
    if _dense(H.mul(_sparse(y, d, n), xs), d, n) != one:
        raise NotInvertible("left inverse is not a right inverse")
    return y


@dataclass(frozen=True)
class TwistElement:
    F: Vector
    Finv: Vector

    @classmethod
    def of(cls, H: HopfAlgebra, F: Sequence) -> "TwistElement":
        F = tuple(S(x) for x in F)
        if len(F) != H.dim ** 2:
            raise HopfError(f"twist must have {H.dim ** 2} entries, got {len(F)}")
        return cls(F, invert(H, F, 2))

    @classmethod
    def trivial(cls, H: HopfAlgebra) -> "TwistElement":
        one = _dense(H.one(2), H.dim, 2)
        return cls(one, one)

    def inverse(self) -> "TwistElement":
        return TwistElement(self.Finv, self.F)


def _cocycle_sides(H: HopfAlgebra, F: Sparse) -> tuple[Sparse, Sparse]:
    one = H.one()
    lhs = H.mul(_tensor(F, one), H.delta_at(F, 0))
    rhs = H.mul(_tensor(one, F), H.delta_at(F, 1))
    return lhs, rhs


def _witnesses(lhs: Sparse, rhs: Sparse) -> tuple:
    keys = sorted(set(lhs) | set(rhs))
    return tuple(k for k in keys if lhs.get(k, ZERO) != rhs.get(k, ZERO))[:20]


def is_twist(H: HopfAlgebra, F: Sequence) -> Report:
    """Cocycle, normalization and invertibility of F ∈ H⊗H."""
    d = H.dim
    Fv = F.F if isinstance(F, TwistElement) else tuple(S(x) for x in F)
    Fs = _sparse(Fv, d, 2)
    lhs, rhs = _cocycle_sides(H, Fs)
    bad = _witnesses(lhs, rhs)
    one = H.one()
    left = H.eps_at(Fs, 0)
    right = H.eps_at(Fs, 1)
    try:
        invert(H, Fv, 2)
        inv_ok = True
    except NotInvertible:
        inv_ok = False
    return Report(
        "twist",
        (
            Check("invertible", inv_ok),
            Check("cocycle", not bad, bad),
            Check("normalization (ε⊗1)F = 1", left == one, tuple(_witnesses(left, one)),
                  detail="" if left == one else f"(ε⊗1)F = {_fmt(left, d)}"),
            Check("normalization (1⊗ε)F = 1", right == one, tuple(_witnesses(right, one)),
                  detail="" if right == one else f"(1⊗ε)F = {_fmt(right, d)}"),
        ),
    )


def _fmt(x: Sparse, d: int) -> str:
    from .core.scalar import format_scalar

    return "[" + ", ".join(format_scalar(c) for c in _dense(x, d, 1)) + "]"


def check_inverse_cocycle(H: HopfAlgebra, T: TwistElement) -> Check:
    """((Δ⊗1)F⁻¹)·F⁻¹₁₂ = ((1⊗Δ)F⁻¹)·F⁻¹₂₃."""
    Fi = _sparse(T.Finv, H.dim, 2)
    one = H.one()
    lhs = H.mul(H.delta_at(Fi, 0), _tensor(Fi, one))
    rhs = H.mul(H.delta_at(Fi, 1), _tensor(one, Fi))
    bad = _witnesses(lhs, rhs)
    return Check("inverse cocycle", not bad, bad)


def _require_twist(H: HopfAlgebra, T: TwistElement):
    rep = is_twist(H, T.F)
    if not rep.passed:
        raise NotATwist("not a twist: " + ", ".join(c.name for c in rep.failures()), rep)


def u_elements(H: HopfAlgebra, T: TwistElement) -> tuple[Vector, Vector]:
    """U = m((1⊗S)F) and U⁻¹ = m((S⊗1)F⁻¹)."""
    d = H.dim
    U = H.mul_slots(H.s_at(_sparse(T.F, d, 2), 1), 0)
    Ui = H.mul_slots(H.s_at(_sparse(T.Finv, d, 2), 0), 0)
    return _dense(U, d, 1), _dense(Ui, d, 1)


def deform_hopf(H: HopfAlgebra, T: TwistElement) -> HopfAlgebra:
    """H^F: same algebra and counit, Δ^F = F Δ F⁻¹, S^F = U S U⁻¹."""
    _require_twist(H, T)
    d = H.dim
    Fs, Fi = _sparse(T.F, d, 2), _sparse(T.Finv, d, 2)
    U, Ui = u_elements(H, T)
    Us, Uis = _sparse(U, d, 1), _sparse(Ui, d, 1)
    one = H.one()
    if H.mul(Us, Uis) != one or H.mul(Uis, Us) != one:
        raise HopfError("U not invertible: internal consistency failure")
    coprod = []
    cols = []
    for i in range(d):
        D = H.mul(H.mul(Fs, H.delta_at(H.basis_sparse(i), 0)), Fi)
        coprod.append(tuple(tuple(D.get((j, k), ZERO) for k in range(d)) for j in range(d)))
        Si = H.mul(H.mul(Us, H.s_at(H.basis_sparse(i), 0)), Uis)
        cols.append(_dense(Si, d, 1))
    return HopfAlgebra(d, H.mult, H.unit, tuple(coprod), H.counit, Matrix.from_columns(cols, d), H.names)


def twist_back(H: HopfAlgebra, T: TwistElement) -> HopfAlgebra:
    """Deform by F, then by F⁻¹ viewed as a twist on H^F; equals H."""
    HF = deform_hopf(H, T)
    return deform_hopf(HF, T.inverse())


# ---------------------------------------------------------------------------
# module algebras


@dataclass(frozen=True)
class ModuleAlgebra:
    """``amult[a][b][c]``: coefficient of f_c in f_a f_b; ``action[h][a][b]``: of f_b in e_h ▷ f_a."""

    dim_a: int
    amult: Tensor3
    aunit: Vector
    action: tuple

    def __post_init__(self):
        e = self.dim_a
        object.__setattr__(self, "amult", _tensor3(self.amult, e, "amult"))
        object.__setattr__(self, "aunit", _vec(self.aunit, e, "aunit"))
        act = tuple(tuple(tuple(S(x) for x in r) for r in blk) for blk in self.action)
        if any(len(blk) != e or any(len(r) != e for r in blk) for blk in act):
            raise HopfError(f"action blocks must be {e}x{e}")
        object.__setattr__(self, "action", act)

    def multiply(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
        e = self.dim_a
        out = [ZERO] * e
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if not yb:
                    continue
                c0 = xa * yb
                for c, m in enumerate(self.amult[a][b]):
                    if m:
                        out[c] += c0 * m
        return tuple(out)

    def act(self, xi: Sequence[Scalar], x: Sequence[Scalar]) -> Vector:
        e = self.dim_a
        out = [ZERO] * e
        for h, ch in enumerate(xi):
            if not ch:
                continue
            for a, xa in enumerate(x):
                if not xa:
                    continue
                for b, m in enumerate(self.action[h][a]):
                    if m:
                        out[b] += ch * xa * m
        return tuple(out)

    def f(self, a: int) -> Vector:
        return tuple(ONE if k == a else ZERO for k in range(self.dim_a))


def check_module_algebra(H: HopfAlgebra, A: ModuleAlgebra) -> Report:
    if len(A.action) != H.dim:
        raise HopfError(f"action has {len(A.action)} blocks, Hopf algebra has dimension {H.dim}")
    d, e = H.dim, A.dim_a
    f = A.f
    hs = range(d)
    As = range(e)

    def coprod_act(h, a, b):
        out = (ZERO,) * e
        for (j, k), c in H._dt[h]:
            term = A.multiply(A.act(H.e(j), f(a)), A.act(H.e(k), f(b)))
            out = tuple(o + c * t for o, t in zip(out, term))
        return out

    checks = [
        _compare("algebra associative", (
            ((a, b, c), A.multiply(A.multiply(f(a), f(b)), f(c)), A.multiply(f(a), A.multiply(f(b), f(c))))
            for a in As for b in As for c in As
        )),
        _compare("algebra unital", (
            ((a,), (A.multiply(A.aunit, f(a)), A.multiply(f(a), A.aunit)), (f(a), f(a))) for a in As
        )),
        _compare("(ξζ)▷a = ξ▷(ζ▷a)", (
            ((g, h, a), A.act(H.multiply(H.e(g), H.e(h)), f(a)), A.act(H.e(g), A.act(H.e(h), f(a))))
            for g in hs for h in hs for a in As
        )),
        _compare("1▷a = a", (((a,), A.act(H.unit, f(a)), f(a)) for a in As)),
        _compare("ξ▷(ab) = (ξ1▷a)(ξ2▷b)", (
            ((h, a, b), A.act(H.e(h), A.multiply(f(a), f(b))), coprod_act(h, a, b))
            for h in hs for a in As for b in As
        )),
        _compare("ξ▷1 = ε(ξ)1", (
            ((h,), A.act(H.e(h), A.aunit), tuple(H.counit[h] * u for u in A.aunit)) for h in hs
        )),
    ]
    return Report("module algebra", tuple(checks))


def twist_module_algebra(H: HopfAlgebra, T: TwistElement, A: ModuleAlgebra) -> ModuleAlgebra:
    """Same space, action and unit; product a⋆b = m(F⁻¹▷(a⊗b))."""
    _require_twist(H, T)
    rep = check_module_algebra(H, A)
    if not rep.passed:
        raise ModuleAxiomsFail("module axioms fail: " + ", ".join(c.name for c in rep.failures()), rep)
    d, e = H.dim, A.dim_a
    Fi = _sparse(T.Finv, d, 2)
    star = []
    for a in range(e):
        row = []
        for b in range(e):
            out = (ZERO,) * e
            for (h, k), c in Fi.items():
                term = A.multiply(A.act(H.e(h), A.f(a)), A.act(H.e(k), A.f(b)))
                out = tuple(o + c * t for o, t in zip(out, term))
            row.append(out)
        star.append(tuple(row))
    return ModuleAlgebra(e, tuple(star), A.aunit, A.action)


def commutator_table(A: ModuleAlgebra) -> dict[tuple[int, int], Vector]:
    """Nonzero f_a f_b − f_b f_a for a < b."""
    out = {}
    for a in range(A.dim_a):
        for b in range(a + 1, A.dim_a):
            c = tuple(x - y for x, y in zip(A.multiply(A.f(a), A.f(b)), A.multiply(A.f(b), A.f(a))))
            if any(c):
                out[(a, b)] = c
    return out


def dual_algebra_of_coalgebra(H: HopfAlgebra) -> tuple[Tensor3, Vector]:
    """Convolution product on H*: (φψ)(c) = (φ⊗ψ)Δ(c), unit ε, in the dual basis."""
    d = H.dim
    mult = tuple(tuple(tuple(H.coprod[c][a][b] for c in range(d)) for b in range(d)) for a in range(d))
    return mult, H.counit


def check_algebra(mult: Tensor3, unit: Vector) -> Report:
    e = len(unit)
    A = ModuleAlgebra(e, mult, unit, ())
    f = A.f
    As = range(e)
    return Report("algebra", (
        _compare("associativity", (
            ((a, b, c), A.multiply(A.multiply(f(a), f(b)), f(c)), A.multiply(f(a), A.multiply(f(b), f(c))))
            for a in As for b in As for c in As
        )),
        _compare("unit", (
            ((a,), (A.multiply(unit, f(a)), A.multiply(f(a), unit)), (f(a), f(a))) for a in As
        )),
    ))


def coregular_module_algebra(H: HopfAlgebra) -> ModuleAlgebra:
    """H* with the convolution product, acted on by (ξ▷φ)(η) = φ(ηξ)."""
    d = H.dim
    mult, unit = dual_algebra_of_coalgebra(H)
    action = tuple(tuple(tuple(H.mult[b][h][a] for b in range(d)) for a in range(d)) for h in range(d))
    return ModuleAlgebra(d, mult, unit, action)


def trivial_module_algebra(H: HopfAlgebra) -> ModuleAlgebra:
    """The ground field with ξ▷1 = ε(ξ)1."""
    return ModuleAlgebra(1, (((ONE,),),), (ONE,), tuple(((H.counit[h],),) for h in range(H.dim)))


# ---------------------------------------------------------------------------
# catalog


def group_algebra(elements: Sequence, mul, inv, names: Sequence[str] | None = None) -> HopfAlgebra:
    """k[G] with Δg = g⊗g, ε(g) = 1, S(g) = g⁻¹; identity must be elements[0]."""
    idx = {g: i for i, g in enumerate(elements)}
    d = len(elements)
    mult = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
    coprod = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
    Srows = [[ZERO] * d for _ in range(d)]
    for i, g in enumerate(elements):
        coprod[i][i][i] = ONE
        Srows[idx[inv(g)]][i] = ONE
        for j, h in enumerate(elements):
            mult[i][j][idx[mul(g, h)]] = ONE
    unit = tuple(ONE if i == 0 else ZERO for i in range(d))
    names = tuple(names) if names else tuple(str(g) for g in elements)
    return HopfAlgebra(d, mult, unit, coprod, (ONE,) * d, Matrix(Srows), names)


def cyclic_group_algebra(n: int) -> HopfAlgebra:
    return group_algebra(list(range(n)), lambda a, b: (a + b) % n, lambda a: (-a) % n,
                         ["1"] + [f"g^{k}" if k > 1 else "g" for k in range(1, n)])


def trivial_hopf() -> HopfAlgebra:
    return cyclic_group_algebra(1)


def klein_four() -> HopfAlgebra:
    """k[Z/2 × Z/2] with basis 1, a, b, ab."""
    els = [(0, 0), (1, 0), (0, 1), (1, 1)]
    return group_algebra(els, lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2), lambda x: x,
                         ["1", "a", "b", "ab"])


def dihedral8() -> HopfAlgebra:
    """k[D4], elements r^k s^f encoded as (k, f), with s r s = r⁻¹."""
    els = [(k, f) for f in (0, 1) for k in range(4)]

    def mul(x, y):
        k1, f1 = x
        k2, f2 = y
        return ((k1 + (-k2 if f1 else k2)) % 4, (f1 + f2) % 2)

    def inv(x):
        k, f = x
        return x if f else ((-k) % 4, 0)

    names = ["1", "r", "r^2", "r^3", "s", "rs", "r^2s", "r^3s"]
    return group_algebra(els, mul, inv, names)


def abelian_twist(H: HopfAlgebra, a: int, b: int) -> Vector:
    """F = ½(1⊗1 + 1⊗a + b⊗1 − b⊗a) for commuting involutions with basis indices a, b."""
    d = H.dim
    half = Scalar(1) / 2
    F = [ZERO] * (d * d)
    for (i, j), c in (((0, 0), half), ((0, a), half), ((b, 0), half), ((b, a), -half)):
        F[i * d + j] += c
    return tuple(F)


def klein_four_twist(H: HopfAlgebra | None = None) -> TwistElement:
    H = H or klein_four()
    return TwistElement.of(H, abelian_twist(H, 1, 2))


def dihedral8_twist(H: HopfAlgebra | None = None) -> TwistElement:
    """The Klein-four twist on the subgroup {1, s, r², r²s}, with a = s and b = r²."""
    H = H or dihedral8()
    return TwistElement.of(H, abelian_twist(H, 4, 2))


def hopf_catalog() -> dict[str, HopfAlgebra]:
    return {
        "trivial": trivial_hopf(),
        "Z2": cyclic_group_algebra(2),
        "Z3": cyclic_group_algebra(3),
        "klein4": klein_four(),
        "D4": dihedral8(),
    }
