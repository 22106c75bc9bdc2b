"""JSON documents for every input and output type.

Scalars always travel as strings in the literal grammar.  Loaders raise
:class:`DocumentError` carrying a file line/column wherever one can be found.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .bialg import Bivector, Cobracket
from .core.linalg import Matrix
from .core.scalar import Scalar, ScalarParseError, format_scalar, parse_scalar
from .decomp import MatrixLieAlgebra
from .hopf import HopfAlgebra, ModuleAlgebra, TwistElement
from .liealg import LieAlgebra


class DocumentError(ValueError):
    def __init__(self, message: str, source: str = "<document>", line: int | None = None, column: int | None = None):
        where = source
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")
        self.source = source
        self.line = line
        self.column = column


class _Ctx:
    """Tracks the raw text so a bad literal can be located in the file."""

    def __init__(self, source: str, text: str | None):
        self.source = source
        self.text = text

    def fail(self, message: str, literal: str | None = None, offset: int = 0):
        line = col = None
        if self.text is not None and literal is not None:
            at = self.text.find(json.dumps(literal))
            if at >= 0:
                at += 1 + offset
                line = self.text.count("\n", 0, at) + 1
                col = at - (self.text.rfind("\n", 0, at) + 1) + 1
        raise DocumentError(message, self.source, line, col)

    def scalar(self, x, path: str) -> Scalar:
        if isinstance(x, bool) or not isinstance(x, (str, int)):
            self.fail(f"{path}: expected a scalar literal string, got {type(x).__name__}")
        if isinstance(x, int):
            return Scalar(x)
        try:
            return parse_scalar(x)
        except ScalarParseError as e:
            self.fail(f"{path}: bad scalar literal {x!r} at position {e.position}: {e.reason}", x, e.position)

    def integer(self, x, path: str) -> int:
        if isinstance(x, bool) or not isinstance(x, int):
            self.fail(f"{path}: expected an integer, got {x!r}")
        return x

    def field(self, doc: dict, key: str, path: str = "$"):
        if not isinstance(doc, dict):
            self.fail(f"{path}: expected an object")
        if key not in doc:
            self.fail(f"{path}: missing field {key!r}")
        return doc[key]

    def array(self, x, path: str, length: int | None = None) -> list:
        if not isinstance(x, list):
            self.fail(f"{path}: expected an array")
        if length is not None and len(x) != length:
            self.fail(f"{path}: expected {length} entries, got {len(x)}")
        return x

    def index(self, x, n: int, path: str) -> int:
        i = self.integer(x, path)
        if not 0 <= i < n:
            self.fail(f"{path}: index {i} out of range 0..{n - 1}")
        return i


def read_document(path: str | Path) -> tuple[Any, _Ctx]:
    source = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise DocumentError("file not found", source) from None
    except OSError as e:
        raise DocumentError(f"cannot read file: {e.strerror}", source) from None
    return parse_document(text, source)


def parse_document(text: str, source: str = "<document>") -> tuple[Any, _Ctx]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"malformed JSON: {e.msg}", source, e.lineno, e.colno) from None
    return doc, _Ctx(source, text)


def _ctx(ctx: _Ctx | None) -> _Ctx:
    return ctx or _Ctx("<document>", None)


def _lit(x: Scalar) -> str:
    return format_scalar(x)


def _matrix_doc(M: Matrix) -> list:
    return [[_lit(x) for x in row] for row in M.rows]


def _matrix(x, ctx: _Ctx, path: str, shape: tuple[int, int] | None = None) -> Matrix:
    rows = ctx.array(x, path, shape[0] if shape else None)
    width = shape[1] if shape else (len(rows[0]) if rows and isinstance(rows[0], list) else 0)
    out = [[ctx.scalar(v, f"{path}[{i}][{j}]") for j, v in enumerate(ctx.array(r, f"{path}[{i}]", width))]
           for i, r in enumerate(rows)]
    return Matrix(out, ncols=width)


# Lie algebras -----------------------------------------------------------------

def lie_to_json(L: LieAlgebra) -> dict:
    brackets = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            res = {str(k): _lit(c) for k, c in enumerate(L.C[i][j]) if c}
            if res:
                brackets.append({"left": i, "right": j, "result": res})
    return {"dim": L.dim, "basis": list(L.basis), "brackets": brackets}


def lie_from_json(doc, ctx: _Ctx | None = None, validate: bool = True) -> LieAlgebra:
    ctx = _ctx(ctx)
    n = ctx.integer(ctx.field(doc, "dim"), "$.dim")
    if n < 0:
        ctx.fail("$.dim: must be nonnegative")
    basis = doc.get("basis")
    if basis is not None:
        ctx.array(basis, "$.basis", n)
        if not all(isinstance(b, str) for b in basis):
            ctx.fail("$.basis: names must be strings")
    table: dict = {}
    for t, br in enumerate(ctx.array(doc.get("brackets", []), "$.brackets")):
        p = f"$.brackets[{t}]"
        i = ctx.index(ctx.field(br, "left", p), n, p + ".left")
        j = ctx.index(ctx.field(br, "right", p), n, p + ".right")
        res = ctx.field(br, "result", p)
        if not isinstance(res, dict):
            ctx.fail(p + ".result: expected an object {index: literal}")
        vals = {}
        for k, v in res.items():
            try:
                kk = int(k)
            except ValueError:
                ctx.fail(f"{p}.result: key {k!r} is not an index")
            if not 0 <= kk < n:
                ctx.fail(f"{p}.result: index {kk} out of range")
            vals[kk] = ctx.scalar(v, f"{p}.result[{k}]")
        if i == j:
            if any(vals.values()):
                ctx.fail(f"{p}: [e{i}, e{i}] must be zero")
            continue
        key, sign = ((i, j), 1) if i < j else ((j, i), -1)
        if key in table:
            ctx.fail(f"{p}: bracket ({i},{j}) given twice")
        table[key] = {k: v * sign for k, v in vals.items()}
    return LieAlgebra.from_brackets(n, table, tuple(basis) if basis else None, validate=validate)


# r-matrices and cobrackets -------------------------------------------------------

def r_to_json(r) -> dict:
    """Antisymmetric r as i<j entries; a general matrix goes under "matrix"."""
    R = r.r if isinstance(r, Bivector) else r
    n = R.nrows
    if R.is_antisymmetric():
        entries = [{"i": i, "j": j, "value": _lit(R[i, j])} for i in range(n) for j in range(i + 1, n) if R[i, j]]
        return {"dim": n, "entries": entries}
    return {"dim": n, "matrix": _matrix_doc(R)}


def r_from_json(doc, ctx: _Ctx | None = None):
    """Bivector for the i<j entry form; a plain Matrix for the general "matrix" form."""
    ctx = _ctx(ctx)
    n = ctx.integer(ctx.field(doc, "dim"), "$.dim")
    if "matrix" in doc:
        return _matrix(doc["matrix"], ctx, "$.matrix", (n, n))
    entries = {}
    for t, e in enumerate(ctx.array(ctx.field(doc, "entries"), "$.entries")):
        p = f"$.entries[{t}]"
        i = ctx.index(ctx.field(e, "i", p), n, p + ".i")
        j = ctx.index(ctx.field(e, "j", p), n, p + ".j")
        if i >= j:
            ctx.fail(f"{p}: entries must have i < j (got i={i}, j={j})")
        if (i, j) in entries:
            ctx.fail(f"{p}: entry ({i},{j}) given twice")
        entries[(i, j)] = ctx.scalar(ctx.field(e, "value", p), p + ".value")
    return Bivector.from_entries(n, entries)


def cobracket_to_json(gamma: Cobracket) -> dict:
    n = gamma.dim
    images = []
    for i, G in enumerate(gamma.gamma):
        entries = [{"i": a, "j": b, "value": _lit(G[a, b])} for a in range(n) for b in range(a + 1, n) if G[a, b]]
        images.append({"of": i, "entries": entries})
    return {"dim": n, "gamma": images}


def cobracket_from_json(doc, ctx: _Ctx | None = None) -> Cobracket:
    ctx = _ctx(ctx)
    n = ctx.integer(ctx.field(doc, "dim"), "$.dim")
    mats = [Bivector.zero(n).r for _ in range(n)]
    seen = set()
    for t, img in enumerate(ctx.array(ctx.field(doc, "gamma"), "$.gamma")):
        p = f"$.gamma[{t}]"
        i = ctx.index(ctx.field(img, "of", p), n, p + ".of")
        if i in seen:
            ctx.fail(f"{p}: image of e{i} given twice")
        seen.add(i)
        mats[i] = r_from_json({"dim": n, "entries": ctx.field(img, "entries", p)}, ctx).r
    return Cobracket(tuple(mats))


def is_cobracket_document(doc) -> bool:
    return isinstance(doc, dict) and "gamma" in doc


def homomorphism_from_json(doc, ctx: _Ctx | None = None) -> Matrix:
    """``{"matrix": [[...]]}``: column j is the image of the j-th source basis vector."""
    ctx = _ctx(ctx)
    return _matrix(ctx.field(doc, "matrix"), ctx, "$.matrix")


def homomorphism_to_json(phi: Matrix) -> dict:
    return {"matrix": _matrix_doc(phi)}


# matrix Lie algebras ---------------------------------------------------------------

def matrix_algebra_to_json(M: MatrixLieAlgebra) -> dict:
    return {"ambient": M.ambient_size, "matrices": [_matrix_doc(B) for B in M.basis], "names": list(M.names)}


def matrix_algebra_from_json(doc, ctx: _Ctx | None = None) -> MatrixLieAlgebra:
    ctx = _ctx(ctx)
    m = ctx.integer(ctx.field(doc, "ambient"), "$.ambient")
    mats = tuple(_matrix(B, ctx, f"$.matrices[{t}]", (m, m))
                 for t, B in enumerate(ctx.array(ctx.field(doc, "matrices"), "$.matrices")))
    names = doc.get("names") or ()
    try:
        return MatrixLieAlgebra(m, mats, tuple(names))
    except ValueError as e:
        ctx.fail(str(e))


# Hopf algebras -----------------------------------------------------------------------

def _tensor3_doc(t) -> list:
    return [[[_lit(x) for x in row] for row in block] for block in t]


def _tensor3(x, ctx: _Ctx, path: str, d: int, e: int | None = None) -> tuple:
    e = d if e is None else e
    blocks = ctx.array(x, path, d)
    return tuple(
        tuple(
            tuple(ctx.scalar(v, f"{path}[{a}][{b}][{c}]") for c, v in enumerate(ctx.array(row, f"{path}[{a}][{b}]", e)))
            for b, row in enumerate(ctx.array(blk, f"{path}[{a}]", e))
        )
        for a, blk in enumerate(blocks)
    )


def _vector(x, ctx: _Ctx, path: str, d: int) -> tuple:
    return tuple(ctx.scalar(v, f"{path}[{i}]") for i, v in enumerate(ctx.array(x, path, d)))


def hopf_to_json(H: HopfAlgebra) -> dict:
    return {
        "dim": H.dim,
        "names": list(H.names),
        "mult": _tensor3_doc(H.mult),
        "unit": [_lit(x) for x in H.unit],
        "coprod": _tensor3_doc(H.coprod),
        "counit": [_lit(x) for x in H.counit],
        "antipode": _matrix_doc(H.antipode),
    }


def hopf_from_json(doc, ctx: _Ctx | None = None) -> HopfAlgebra:
    ctx = _ctx(ctx)
    d = ctx.integer(ctx.field(doc, "dim"), "$.dim")
    if d < 1:
        ctx.fail("$.dim: must be positive")
    return HopfAlgebra(
        d,
        _tensor3(ctx.field(doc, "mult"), ctx, "$.mult", d),
        _vector(ctx.field(doc, "unit"), ctx, "$.unit", d),
        _tensor3(ctx.field(doc, "coprod"), ctx, "$.coprod", d),
        _vector(ctx.field(doc, "counit"), ctx, "$.counit", d),
        _matrix(ctx.field(doc, "antipode"), ctx, "$.antipode", (d, d)),
        tuple(doc.get("names") or ()),
    )


def twist_vector_from_json(doc, H: HopfAlgebra, ctx: _Ctx | None = None) -> tuple:
    ctx = _ctx(ctx)
    return _vector(ctx.field(doc, "F"), ctx, "$.F", H.dim ** 2)


def twist_to_json(T: TwistElement) -> dict:
    return {"F": [_lit(x) for x in T.F]}


def module_algebra_to_json(A: ModuleAlgebra) -> dict:
    return {
        "dim": A.dim_a,
        "mult": _tensor3_doc(A.amult),
        "unit": [_lit(x) for x in A.aunit],
        "action": _tensor3_doc(A.action),
    }


def module_algebra_from_json(doc, H: HopfAlgebra, ctx: _Ctx | None = None) -> ModuleAlgebra:
    ctx = _ctx(ctx)
    e = ctx.integer(ctx.field(doc, "dim"), "$.dim")
    return ModuleAlgebra(
        e,
        _tensor3(ctx.field(doc, "mult"), ctx, "$.mult", e),
        _vector(ctx.field(doc, "unit"), ctx, "$.unit", e),
        _tensor3(ctx.field(doc, "action"), ctx, "$.action", H.dim, e),
    )


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


# deformation data ------------------------------------------------------------------

def bidiff_to_json(B) -> dict:
    return {"terms": [{"alpha": list(a), "beta": list(b), "coeff": _lit(c)} for a, b, c in B.term_list()]}


def bidiff_from_json(doc, ctx: _Ctx | None = None):
    from .deform import BidiffOp

    ctx = _ctx(ctx)
    terms = []
    for t, term in enumerate(ctx.array(ctx.field(doc, "terms"), "$.terms")):
        p = f"$.terms[{t}]"
        alpha = tuple(ctx.integer(v, p + ".alpha") for v in ctx.array(ctx.field(term, "alpha", p), p + ".alpha", 2))
        beta = tuple(ctx.integer(v, p + ".beta") for v in ctx.array(ctx.field(term, "beta", p), p + ".beta", 2))
        terms.append((alpha, beta, ctx.scalar(ctx.field(term, "coeff", p), p + ".coeff")))
    return BidiffOp(terms)


def poly_series_to_json(series) -> dict:
    from .deform import format_poly

    return {"order": series.order, "coeffs": [format_poly(p) for p in series.coeffs]}


def poly_series_from_json(doc, ctx: _Ctx | None = None):
    from .deform import HbarSeries, PolyParseError, parse_poly

    ctx = _ctx(ctx)
    N = ctx.integer(ctx.field(doc, "order"), "$.order")
    coeffs = []
    for r, s in enumerate(ctx.array(ctx.field(doc, "coeffs"), "$.coeffs", N + 1)):
        if not isinstance(s, str):
            ctx.fail(f"$.coeffs[{r}]: expected a polynomial string")
        try:
            coeffs.append(parse_poly(s))
        except PolyParseError as e:
            ctx.fail(f"$.coeffs[{r}]: {e}", s, e.position)
    return HbarSeries(N, tuple(coeffs))


def twist_series_to_json(T) -> dict:
    return {
        "order": T.order,
        "F": [bidiff_to_json(op) for op in T.F.coeffs],
        "Finv": [bidiff_to_json(op) for op in T.Finv.coeffs],
    }


def twist_series_from_json(doc, ctx: _Ctx | None = None):
    from .deform import HbarSeries, TwistSeries

    ctx = _ctx(ctx)
    N = ctx.integer(ctx.field(doc, "order"), "$.order")
    F = HbarSeries(N, tuple(bidiff_from_json(d, ctx) for d in ctx.array(ctx.field(doc, "F"), "$.F", N + 1)))
    Fi = HbarSeries(N, tuple(bidiff_from_json(d, ctx) for d in ctx.array(ctx.field(doc, "Finv"), "$.Finv", N + 1)))
    try:
        return TwistSeries(F, Fi)
    except ValueError as e:
        ctx.fail(str(e))
