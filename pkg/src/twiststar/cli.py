"""Command-line front end.

Exit codes: 0 when the computation succeeded and every check passed, 1 when a
mathematical check failed, 2 for bad input (unknown verb, missing or malformed
file, unparsable literal or expression).
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Callable

from . import bialg, cohomology, decomp, deform, hopf, liealg, verdict
from .core.linalg import Matrix
from .core.scalar import ScalarParseError, format_scalar, parse_scalar
from .formats import (
    DocumentError,
    bidiff_to_json,
    cobracket_from_json,
    cobracket_to_json,
    dumps,
    homomorphism_from_json,
    hopf_from_json,
    hopf_to_json,
    is_cobracket_document,
    lie_from_json,
    lie_to_json,
    matrix_algebra_from_json,
    module_algebra_from_json,
    module_algebra_to_json,
    poly_series_to_json,
    r_from_json,
    r_to_json,
    read_document,
    twist_series_to_json,
    twist_vector_from_json,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class Outcome:
    ok: bool
    doc: dict
    lines: list = field(default_factory=list)


def _lit(x) -> str:
    return format_scalar(x)


def _vec(v) -> str:
    return "(" + ", ".join(_lit(x) for x in v) + ")"


def _mat_lines(M: Matrix, indent: str = "  ") -> list[str]:
    return [indent + "[" + ", ".join(_lit(x) for x in row) + "]" for row in M.rows]


def _mat_doc(M: Matrix) -> list:
    return [[_lit(x) for x in row] for row in M.rows]


# loaders ---------------------------------------------------------------------

def _lie(path: str, validate: bool = True) -> liealg.LieAlgebra:
    doc, ctx = read_document(path)
    try:
        return lie_from_json(doc, ctx, validate=validate)
    except liealg.InvalidAlgebra as e:
        raise InputError(f"{path}: not a Lie algebra: {e} (witness {e.witness})") from None
    except ValueError as e:
        if isinstance(e, DocumentError):
            raise
        raise InputError(f"{path}: {e}") from None


def _r(path: str, L: liealg.LieAlgebra):
    doc, ctx = read_document(path)
    r = r_from_json(doc, ctx)
    n = r.dim if isinstance(r, bialg.Bivector) else r.nrows
    if n != L.dim:
        raise InputError(f"{path}: r has dimension {n}, algebra has dimension {L.dim}")
    return r


def _gamma(path: str, L: liealg.LieAlgebra) -> bialg.Cobracket:
    """A cobracket document, or an r-matrix document turned into δr."""
    doc, ctx = read_document(path)
    if is_cobracket_document(doc):
        gamma = cobracket_from_json(doc, ctx)
        if gamma.dim != L.dim:
            raise InputError(f"{path}: cobracket has dimension {gamma.dim}, algebra has dimension {L.dim}")
        return gamma
    r = r_from_json(doc, ctx)
    if not isinstance(r, bialg.Bivector):
        raise InputError(f"{path}: a cobracket needs an antisymmetric r")
    if r.dim != L.dim:
        raise InputError(f"{path}: r has dimension {r.dim}, algebra has dimension {L.dim}")
    return bialg.cobracket_from_r(L, r)


def _hopf(path: str) -> hopf.HopfAlgebra:
    doc, ctx = read_document(path)
    try:
        return hopf_from_json(doc, ctx)
    except hopf.HopfError as e:
        raise InputError(f"{path}: {e}") from None


def _twist_vector(path: str, H: hopf.HopfAlgebra):
    doc, ctx = read_document(path)
    return twist_vector_from_json(doc, H, ctx)


def _twist(path: str, H: hopf.HopfAlgebra) -> tuple[hopf.TwistElement | None, object]:
    F = _twist_vector(path, H)
    rep = hopf.is_twist(H, F)
    if not rep.passed:
        return None, rep
    return hopf.TwistElement.of(H, F), rep


def _exprs(args, count: int) -> list[deform.Poly]:
    exprs = args.expr or []
    if len(exprs) != count:
        raise InputError(f"expected {count} --expr arguments, got {len(exprs)}")
    out = []
    for s in exprs:
        try:
            out.append(deform.parse_poly(s))
        except deform.PolyParseError as e:
            raise InputError(f"--expr {s!r}: {e}") from None
    return out


def _coeff(args):
    if args.coeff is None:
        return deform.I
    try:
        return parse_scalar(args.coeff)
    except ScalarParseError as e:
        raise InputError(f"--coeff {args.coeff!r}: position {e.position}: {e.reason}") from None


def _moyal(args) -> deform.TwistSeries:
    if args.order < 1:
        raise InputError("--order must be at least 1")
    return deform.moyal_twist(_coeff(args), args.order)


def _report_outcome(rep, extra: dict | None = None, extra_lines: list | None = None) -> Outcome:
    doc = {"report": rep.to_json()}
    doc.update(extra or {})
    return Outcome(rep.passed, doc, (extra_lines or []) + rep.lines())


# verbs -------------------------------------------------------------------------

def cmd_check_jacobi(args) -> Outcome:
    L = _lie(args.algebra, validate=False)
    c = liealg.check_jacobi(L)
    lines = [f"Jacobi identity: {'pass' if c.passed else 'FAIL'}"]
    for i, j, k, l, v in c.witnesses:
        lines.append(f"  violated at (e{i}, e{j}, e{k}): component {l} = {_lit(v)}")
    return Outcome(c.passed, {"check": c.to_json()}, lines)


def cmd_killing(args) -> Outcome:
    L = _lie(args.algebra)
    K = liealg.killing_form(L).matrix
    rad = liealg.killing_radical(L)
    lines = ["Killing form:"] + _mat_lines(K) + [f"radical dimension: {rad.dim}"]
    lines += [f"  {_vec(v)}" for v in rad.basis]
    return Outcome(True, {"killing": _mat_doc(K), "determinant": _lit(liealg.killing_form(L).determinant()),
                          "radical": [[_lit(x) for x in v] for v in rad.basis]}, lines)


def cmd_semisimple(args) -> Outcome:
    L = _lie(args.algebra)
    ss = liealg.is_semisimple(L)
    rad = liealg.killing_radical(L)
    return Outcome(True, {"semisimple": ss, "radical_dim": rad.dim},
                   [f"semisimple: {'yes' if ss else 'no'}", f"radical dimension: {rad.dim}"])


def cmd_cohomology(args) -> Outcome:
    L = _lie(args.algebra)
    M = cohomology.make_module(L, args.module)
    degrees = [args.degree] if args.degree is not None else list(range(cohomology.MAX_DEGREE + 1))
    for n in degrees:
        if not 0 <= n <= cohomology.MAX_DEGREE:
            raise InputError(f"--degree must be in 0..{cohomology.MAX_DEGREE}")
    dims = {n: cohomology.cohomology_dim(L, M, n) for n in degrees}
    checks = [cohomology.check_d_squared(L, M, n) for n in range(cohomology.MAX_DEGREE)]
    ok = all(c.passed for c in checks)
    lines = [f"module: {M.kind.value}"] + [f"H^{n} = {d}" for n, d in dims.items()]
    lines += [f"{c.name}: {'pass' if c.passed else 'FAIL'}" for c in checks]
    return Outcome(ok, {"module": M.kind.value, "dims": {str(n): d for n, d in dims.items()},
                        "checks": [c.to_json() for c in checks]}, lines)


def _gamma_lines(L, gamma: bialg.Cobracket) -> list[str]:
    out = []
    n = L.dim
    for i, G in enumerate(gamma.gamma):
        terms = [f"{_lit(G[a, b])}·{L.basis[a]}∧{L.basis[b]}" for a in range(n) for b in range(a + 1, n) if G[a, b]]
        out.append(f"  γ({L.basis[i]}) = " + (" + ".join(terms) if terms else "0"))
    return out


def cmd_cobracket(args) -> Outcome:
    L = _lie(args.algebra)
    gamma = _gamma(args.r, L)
    return Outcome(True, {"cobracket": cobracket_to_json(gamma)}, ["cobracket:"] + _gamma_lines(L, gamma))


def cmd_cocycle(args) -> Outcome:
    L = _lie(args.algebra)
    c = bialg.check_cocycle(L, _gamma(args.r, L))
    lines = [f"1-cocycle condition: {'pass' if c.passed else 'FAIL'}"]
    lines += [f"  violated at pair {w}" for w in c.witnesses]
    return Outcome(c.passed, {"check": c.to_json()}, lines)


def cmd_cojacobi(args) -> Outcome:
    L = _lie(args.algebra)
    c = bialg.check_cojacobi(L, _gamma(args.r, L))
    lines = [f"co-Jacobi identity: {'pass' if c.passed else 'FAIL'}"]
    lines += [f"  violated at {w}" for w in c.witnesses]
    return Outcome(c.passed, {"check": c.to_json()}, lines)


def cmd_dual(args) -> Outcome:
    L = _lie(args.algebra)
    gamma = _gamma(args.r, L)
    D = bialg.dual_bracket(L, gamma, validate=False)
    c = liealg.check_jacobi(D)
    lines = ["dual bracket:"]
    for i in range(D.dim):
        for j in range(i + 1, D.dim):
            if any(D.C[i][j]):
                lines.append(f"  [{D.basis[i]}, {D.basis[j]}] = {liealg._describe(D, D.C[i][j])}")
    lines.append(f"Jacobi identity on the dual: {'pass' if c.passed else 'FAIL'}")
    return Outcome(c.passed, {"algebra": lie_to_json(D), "check": c.to_json()}, lines)


def cmd_cybe(args) -> Outcome:
    L = _lie(args.algebra)
    r = _r(args.r, L)
    comps = bialg.nonzero_cyb_components(L, r)
    lines = ["CYB(r) = 0" if not comps else f"CYB(r) has {len(comps)} nonzero components:"]
    lines += [f"  ({i},{m},{l}): {_lit(v)}" for i, m, l, v in comps]
    return Outcome(not comps, {"components": [[i, m, l, _lit(v)] for i, m, l, v in comps]}, lines)


def cmd_classify(args) -> Outcome:
    L = _lie(args.algebra)
    kind, rep = bialg.classify_r(L, _r(args.r, L))
    lines = [f"classification: {kind.value}"] + [f"  {c.name}: {'yes' if c.passed else 'no'}" for c in rep.checks]
    return Outcome(True, {"class": kind.value, "report": rep.to_json()}, lines)


def cmd_es_subalgebra(args) -> Outcome:
    L = _lie(args.algebra)
    r = _r(args.r, L)
    if not isinstance(r, bialg.Bivector):
        return Outcome(False, {"error": "not an r-matrix: r is not antisymmetric"}, ["not an r-matrix: r is not antisymmetric"])
    try:
        h = bialg.etingof_schiffmann(L, r)
    except bialg.NotAnRMatrix as e:
        return Outcome(False, {"error": f"not an r-matrix: {e}"}, [f"not an r-matrix: {e}"])
    sub = liealg.restrict(L, h)
    rr = bialg.restricted_r(r, h)
    lines = [f"dim h_r = {h.dim}"] + [f"  {_vec(v)}" for v in h.basis]
    lines += [f"restricted algebra semisimple: {'yes' if h.dim and liealg.is_semisimple(sub) else 'no'}"]
    return Outcome(True, {"basis": [[_lit(x) for x in v] for v in h.basis], "algebra": lie_to_json(sub),
                          "r": r_to_json(bialg.Bivector(rr))}, lines)


def cmd_pushforward(args) -> Outcome:
    src, dst = _lie(args.source), _lie(args.target)
    doc, ctx = read_document(args.phi)
    phi = homomorphism_from_json(doc, ctx)
    if phi.shape != (dst.dim, src.dim):
        raise InputError(f"{args.phi}: map must be {dst.dim}x{src.dim}, got {phi.nrows}x{phi.ncols}")
    r = _r(args.r, src)
    if not isinstance(r, bialg.Bivector):
        raise InputError(f"{args.r}: pushforward needs an antisymmetric r")
    try:
        r2 = bialg.pushforward_r(phi, r, src, dst)
    except bialg.NotAHomomorphism as e:
        return Outcome(False, {"error": str(e), "witness": list(e.witness or ())},
                       [f"not a homomorphism: witness pair {e.witness}"])
    comps = bialg.nonzero_cyb_components(dst, r2)
    lines = ["pushed-forward r:"] + _mat_lines(r2.r) + [f"CYB = 0 on target: {'yes' if not comps else 'no'}"]
    return Outcome(True, {"r": r_to_json(r2), "cyb_zero": not comps}, lines)


def _matalg(path: str) -> decomp.MatrixLieAlgebra:
    doc, ctx = read_document(path)
    M = matrix_algebra_from_json(doc, ctx)
    try:
        decomp.matrix_to_abstract(M)
    except decomp.NotClosedError as e:
        raise InputError(f"{path}: not closed under commutator: {e}") from None
    return M


def cmd_cartan(args) -> Outcome:
    M = _matalg(args.algebra)
    try:
        k, p = decomp.cartan_decomposition(M)
    except decomp.ThetaNotPreserved as e:
        return Outcome(False, {"error": f"Θ does not preserve algebra: {e}"}, [f"Θ does not preserve algebra: {e}"])
    L = decomp.matrix_to_abstract(M)
    rep = decomp.cartan_relations(L, k, p)
    extra = {"k": [_mat_doc(M.element(v)) for v in k.basis], "p": [_mat_doc(M.element(v)) for v in p.basis]}
    return _report_outcome(rep, extra, [f"dim k = {k.dim}, dim p = {p.dim}"])


def cmd_iwasawa(args) -> Outcome:
    M = _matalg(args.algebra)
    try:
        res = decomp.iwasawa(M)
    except (decomp.IrrationalRoots, decomp.DecompositionFailed, decomp.ThetaNotPreserved) as e:
        return Outcome(False, {"error": str(e)}, [str(e)])
    L = decomp.matrix_to_abstract(M)
    rep = decomp.iwasawa_checks(L, res)
    checks = list(rep.checks)
    if liealg.is_semisimple(L):
        checks.append(decomp.Check("B_Θ positive definite", decomp.is_positive_definite(decomp.b_theta(M))))
    rep = decomp.Report("iwasawa", tuple(checks))
    k, a, n = res.dims
    roots = [{"functional": [str(x) for x in lab], "multiplicity": mult} for lab, mult in res.restricted_roots]
    extra = {
        "dims": {"k": k, "a": a, "n": n},
        "k": [_mat_doc(B) for B in res.k_basis],
        "a": [_mat_doc(B) for B in res.a_basis],
        "n": [_mat_doc(B) for B in res.n_basis],
        "restricted_roots": roots,
    }
    lines = [f"dims (k, a, n) = ({k}, {a}, {n})"]
    lines += [f"  root {r['functional']} multiplicity {r['multiplicity']}" for r in roots]
    return _report_outcome(rep, extra, lines)


def cmd_hopf_check(args) -> Outcome:
    H = _hopf(args.hopf)
    rep = hopf.check_hopf_axioms(H)
    checks = list(rep.checks)
    if rep.passed:
        checks += list(hopf.antipode_properties(H).checks)
        unique, sol = hopf.solve_antipode(H)
        checks.append(hopf.Check("antipode unique", unique and sol == H.antipode))
    return _report_outcome(hopf.Report("hopf algebra", tuple(checks)))


def cmd_twist_check(args) -> Outcome:
    H = _hopf(args.hopf)
    F = _twist_vector(args.twist, H)
    rep = hopf.is_twist(H, F)
    if rep.passed:
        T = hopf.TwistElement.of(H, F)
        rep = hopf.Report("twist", rep.checks + (hopf.check_inverse_cocycle(H, T),))
    return _report_outcome(rep)


def cmd_twist_deform(args) -> Outcome:
    H = _hopf(args.hopf)
    T, trep = _twist(args.twist, H)
    if T is None:
        return _report_outcome(trep)
    HF = hopf.deform_hopf(H, T)
    ax = hopf.check_hopf_axioms(HF)
    back = hopf.twist_back(H, T)
    checks = ax.checks + (hopf.Check("twist back recovers H", back == H),)
    rep = hopf.Report("deformed hopf algebra", checks)
    return _report_outcome(rep, {"hopf": hopf_to_json(HF)},
                           [f"coproduct changed: {'yes' if HF.coprod != H.coprod else 'no'}"])


def cmd_twist_module(args) -> Outcome:
    H = _hopf(args.hopf)
    T, trep = _twist(args.twist, H)
    if T is None:
        return _report_outcome(trep)
    if args.module_algebra:
        doc, ctx = read_document(args.module_algebra)
        try:
            A = module_algebra_from_json(doc, H, ctx)
        except hopf.HopfError as e:
            raise InputError(f"{args.module_algebra}: {e}") from None
    else:
        A = hopf.coregular_module_algebra(H)
    try:
        AF = hopf.twist_module_algebra(H, T, A)
    except hopf.ModuleAxiomsFail as e:
        return _report_outcome(e.report, extra_lines=["module axioms fail for the input algebra"])
    rep = hopf.check_module_algebra(hopf.deform_hopf(H, T), AF)
    comm = hopf.commutator_table(AF)
    lines = [f"twisted product noncommutative on {len(comm)} basis pairs"]
    extra = {"module_algebra": module_algebra_to_json(AF),
             "commutators": [{"pair": list(k), "value": [_lit(x) for x in v]} for k, v in comm.items()]}
    return _report_outcome(rep, extra, lines)


def cmd_moyal(args) -> Outcome:
    T = _moyal(args)
    lines = [f"F_{k} = {op}" for k, op in enumerate(T.F.coeffs)]
    lines += [f"Finv_{k} = {op}" for k, op in enumerate(T.Finv.coeffs)]
    lines.append(f"F·Finv = 1 mod hbar^{T.order + 1}: pass")
    return Outcome(True, {"twist": twist_series_to_json(T)}, lines)


def _series_lines(label: str, s) -> list[str]:
    return [f"{label}:"] + [f"  hbar^{r}: {deform.format_poly(p)}" for r, p in enumerate(s.coeffs)]


def cmd_star(args) -> Outcome:
    T = _moyal(args)
    f, g = _exprs(args, 2)
    s = deform.twist_product(T, f, g)
    return Outcome(True, {"product": poly_series_to_json(s)}, _series_lines("f ⋆ g", s))


def cmd_assoc(args) -> Outcome:
    T = _moyal(args)
    f, g, h = _exprs(args, 3)
    return _report_outcome(deform.check_associativity(T, f, g, h))


def cmd_extract_r(args) -> Outcome:
    T = _moyal(args)
    r = deform.extract_rmatrix(T)
    ok = r.is_antisymmetric()
    lines = [f"r = {r}", f"antisymmetric: {'yes' if ok else 'no'}"]
    return Outcome(ok, {"r": bidiff_to_json(r), "matrix": _mat_doc(r.to_matrix()) if r else [[_lit(0)] * 2] * 2}, lines)


def cmd_poisson_check(args) -> Outcome:
    T = _moyal(args)
    f, g = _exprs(args, 2)
    return _report_outcome(deform.poisson_compatibility(T, f, g))


def _genus(args) -> int:
    if args.genus is None or args.genus < 0:
        raise InputError("--genus must be a nonnegative integer")
    return args.genus


def cmd_euler(args) -> Outcome:
    g = _genus(args)
    chi = verdict.euler_characteristic_surface(g)
    return Outcome(True, {"genus": g, "euler_characteristic": chi}, [f"χ(T({g})) = {chi}"])


def cmd_surface(args) -> Outcome:
    v = verdict.surface_verdict(_genus(args))
    return Outcome(True, {"verdict": v.to_json()}, v.lines(show_flags=False))


def cmd_obstruct(args) -> Outcome:
    L = _lie(args.algebra)
    v = verdict.algebra_verdict(L, _r(args.r, L))
    ok = not v.flags
    return Outcome(ok, {"verdict": v.to_json()}, v.lines())


VERBS: dict[str, tuple[Callable, list[str], str]] = {
    "check-jacobi": (cmd_check_jacobi, ["algebra"], "check the Jacobi identity"),
    "killing": (cmd_killing, ["algebra"], "Killing form and its radical"),
    "semisimple": (cmd_semisimple, ["algebra"], "semisimplicity via the Killing form"),
    "cohomology": (cmd_cohomology, ["algebra"], "Chevalley–Eilenberg cohomology dimensions"),
    "cobracket": (cmd_cobracket, ["algebra", "r"], "cobracket δr"),
    "cocycle": (cmd_cocycle, ["algebra", "r"], "1-cocycle condition for δr or a cobracket document"),
    "cojacobi": (cmd_cojacobi, ["algebra", "r"], "co-Jacobi identity"),
    "dual": (cmd_dual, ["algebra", "r"], "dual Lie bracket on g*"),
    "cybe": (cmd_cybe, ["algebra", "r"], "classical Yang–Baxter components"),
    "classify": (cmd_classify, ["algebra", "r"], "triangular / quasitriangular / coboundary"),
    "es-subalgebra": (cmd_es_subalgebra, ["algebra", "r"], "Etingof–Schiffmann subalgebra h_r"),
    "pushforward": (cmd_pushforward, ["source", "target", "phi", "r"], "push r forward along a homomorphism"),
    "cartan": (cmd_cartan, ["algebra"], "Cartan decomposition for Θ(X) = −Xᵀ"),
    "iwasawa": (cmd_iwasawa, ["algebra"], "Iwasawa decomposition"),
    "hopf-check": (cmd_hopf_check, ["hopf"], "Hopf algebra axioms"),
    "twist-check": (cmd_twist_check, ["hopf", "twist"], "Drinfel'd twist conditions"),
    "twist-deform": (cmd_twist_deform, ["hopf", "twist"], "deformed Hopf algebra H^F"),
    "twist-module": (cmd_twist_module, ["hopf", "twist"], "twisted module algebra"),
    "moyal": (cmd_moyal, [], "Moyal twist series"),
    "star": (cmd_star, [], "twist star product of two --expr"),
    "assoc": (cmd_assoc, [], "associativity of the star product on three --expr"),
    "extract-r": (cmd_extract_r, [], "r = σ(F1) − F1"),
    "poisson-check": (cmd_poisson_check, [], "first-order Poisson compatibility"),
    "euler": (cmd_euler, [], "Euler characteristic of the genus-g surface"),
    "surface": (cmd_surface, [], "twist star product verdict for a genus-g surface"),
    "obstruct": (cmd_obstruct, ["algebra", "r"], "obstruction chain for an r-matrix"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twiststar", description="Exact Lie bialgebra, Hopf twist and star product checks.")
    sub = parser.add_subparsers(dest="verb", metavar="verb", required=True)
    for name, (_, positionals, help_text) in VERBS.items():
        p = sub.add_parser(name, help=help_text)
        for pos in positionals:
            p.add_argument(pos)
        p.add_argument("--json", action="store_true", help="emit one JSON document")
        if name == "cohomology":
            p.add_argument("--degree", type=int)
            p.add_argument("--module", choices=[m.value for m in cohomology.ModuleKind], default="trivial")
        if name == "twist-module":
            p.add_argument("module_algebra", nargs="?", help="module algebra document (default: coregular action on H*)")
        if name in ("moyal", "star", "assoc", "extract-r", "poisson-check"):
            p.add_argument("--order", type=int, default=4)
            p.add_argument("--coeff", help="scalar c in F = exp(−c ħ X), default i")
        if name in ("star", "assoc", "poisson-check"):
            p.add_argument("--expr", action="append", help="polynomial in x1, x2 (repeatable)")
        if name in ("euler", "surface"):
            p.add_argument("--genus", type=int, required=True)
    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    handler = VERBS[args.verb][0]
    try:
        outcome = handler(args)
    except (DocumentError, InputError, ScalarParseError, deform.PolyParseError) as e:
        print(f"error: {e}", file=err)
        return EXIT_INPUT
    if args.json:
        doc = {"verb": args.verb, "passed": outcome.ok}
        doc.update(outcome.doc)
        print(dumps(doc), file=out)
    else:
        print("\n".join(outcome.lines), file=out)
    return EXIT_OK if outcome.ok else EXIT_FAILED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
