"""Obstruction pipeline for twist star products.

The geometric theorems enter only as citation strings on chain steps; what is
actually computed are their algebraic preconditions and consequences.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .bialg import Bivector, _as_matrix, cyb, etingof_schiffmann, nonzero_cyb_components, restricted_r
from .core.linalg import Matrix, rank
from .core.scalar import format_scalar
from .deform import TwistSeries, check_associativity, moyal_twist, parse_poly
from .liealg import LieAlgebra, is_semisimple, killing_form, restrict

INCONSISTENCY_FLAG = "inconsistent configuration: non-degenerate r-matrix on semisimple subalgebra (impossible)"

CITE_EULER = "χ(T(g)) = 2 − 2g"
CITE_COMPACT_HOMOGENEOUS = "a compact homogeneous space M = G/H of a connected Lie group G satisfies χ(M) ≥ 0"
CITE_TRANSITIVE = (
    "a twist star product on M, induced by a twist on U(g)[[ħ]], makes the Etingof–Schiffmann group H_r "
    "act transitively on M, so M is a homogeneous space of H_r"
)
CITE_SPHERE_ACTIONS = "every connected Lie group acting transitively and effectively on S² is semisimple"
CITE_NOT_SEMISIMPLE = "a Lie algebra with a non-degenerate triangular r-matrix is never semisimple"
CITE_ANTISYM = "a triangular structure is an element r ∈ g∧g"
CITE_CYBE = "r is triangular iff CYB(r) = [r12,r13] + [r12,r23] + [r13,r23] = 0"
CITE_ES = "h_r = {(f⊗1)r | f ∈ g*} is a Lie subalgebra and r ∈ h_r∧h_r is non-degenerate there"
CITE_KILLING = "κ(x,y) = tr(ad x ∘ ad y)"
CITE_CARTAN = "g is semisimple iff its Killing form is non-degenerate"
CITE_MOYAL = "F = exp(−iħ ∂/∂x1 ∧ ∂/∂x2) is a twist on the abelian algebra spanned by ∂/∂x1, ∂/∂x2, inducing the Moyal product on T²"


class Answer(str, Enum):
    YES = "yes"
    NO = "no"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class Step:
    step: str
    result: str
    citation: str

    def to_json(self) -> dict[str, str]:
        return {"step": self.step, "result": self.result, "citation": self.citation}


@dataclass(frozen=True)
class Verdict:
    exists_twist_star: Answer
    chain: tuple
    flags: tuple = ()
    witness: Any = field(default=None, compare=False)

    def __post_init__(self):
        if not self.chain:
            raise ValueError("verdict chain must be nonempty")
        if self.exists_twist_star is Answer.NO and not any(s.citation for s in self.chain):
            raise ValueError("a 'no' verdict needs a citation")

    def to_json(self) -> dict[str, Any]:
        return {
            "exists_twist_star": self.exists_twist_star.value,
            "chain": [s.to_json() for s in self.chain],
            "flags": list(self.flags),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Verdict":
        return cls(
            Answer(doc["exists_twist_star"]),
            tuple(Step(s["step"], s["result"], s["citation"]) for s in doc["chain"]),
            tuple(doc.get("flags", ())),
        )

    def lines(self, show_flags: bool = True) -> list[str]:
        out = [f"exists twist star product: {self.exists_twist_star.value}"]
        for s in self.chain:
            out.append(f"  {s.step}: {s.result}")
            if s.citation:
                out.append(f"      [{s.citation}]")
        if self.flags:
            out.extend(f"  FLAG: {f}" for f in self.flags)
        elif show_flags:
            out.append("no contradiction flag")
        return out


def euler_characteristic_surface(genus: int) -> int:
    if genus < 0:
        raise ValueError("genus must be a natural number")
    return 2 - 2 * genus


# fixed sample triples for the constructive torus witness
_WITNESS_TRIPLES = (
    ("x1", "x2", "x1*x2"),
    ("x1^2", "x2^2", "x1*x2"),
    ("x1*x2^2", "x1^2", "x2^3"),
    ("x1^3", "x2", "x1^2*x2"),
)


def torus_witness(order: int = 3) -> TwistSeries:
    """Moyal twist, checked for associativity to the given order before it is returned."""
    T = moyal_twist(N=order)
    for triple in _WITNESS_TRIPLES:
        f, g, h = (parse_poly(s) for s in triple)
        rep = check_associativity(T, f, g, h, order)
        if not rep.passed:
            raise AssertionError(f"Moyal witness failed associativity on {triple}: {rep.data['residual']}")
    return T


def surface_verdict(genus: int) -> Verdict:
    chi = euler_characteristic_surface(genus)
    euler = Step("euler characteristic", f"χ = {chi}", CITE_EULER)
    if genus == 0:
        return Verdict(Answer.NO, (
            euler,
            Step("homogeneous structure", "S² must be a homogeneous space of H_r", CITE_TRANSITIVE),
            Step("transitive actions on S²", "H_r would be semisimple", CITE_SPHERE_ACTIONS),
            Step("semisimplicity obstruction", "contradiction: h_r carries a non-degenerate r-matrix", CITE_NOT_SEMISIMPLE),
        ))
    if genus == 1:
        T = torus_witness(3)
        return Verdict(Answer.YES, (
            euler,
            Step("Moyal witness", "associative mod ħ^4 on sample triples; x1⋆x2 − x2⋆x1 = 2iħ", CITE_MOYAL),
        ), witness=T)
    return Verdict(Answer.NO, (
        euler,
        Step("homogeneous structure", f"T({genus}) must be a compact homogeneous space of H_r", CITE_TRANSITIVE),
        Step("Euler obstruction", f"χ = {chi} < 0 contradicts χ ≥ 0", CITE_COMPACT_HOMOGENEOUS),
    ))


def _matrix_str(M: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(format_scalar(x) for x in row) + "]" for row in M.rows) + "]"


def algebra_verdict(L: LieAlgebra, r) -> Verdict:
    """Run antisymmetry, CYBE, h_r, restriction, Killing form and semisimplicity."""
    R = _as_matrix(r)
    if R.shape != (L.dim, L.dim):
        raise ValueError(f"r is {R.nrows}x{R.ncols}, algebra has dimension {L.dim}")
    chain = []
    if not R.is_antisymmetric():
        chain.append(Step("antisymmetry", "fail: r + σ(r) ≠ 0, candidate rejected", CITE_ANTISYM))
        return Verdict(Answer.UNDETERMINED, tuple(chain), ("candidate rejected at antisymmetry",))
    chain.append(Step("antisymmetry", "pass", CITE_ANTISYM))
    if any(cyb(L, R)):
        comps = nonzero_cyb_components(L, R)
        shown = ", ".join(f"({i},{m},{l})={format_scalar(c)}" for i, m, l, c in comps[:6])
        chain.append(Step("CYBE", f"fail: nonzero components {shown}", CITE_CYBE))
        return Verdict(Answer.UNDETERMINED, tuple(chain), ("candidate rejected at CYBE",))
    chain.append(Step("CYBE", "pass: CYB(r) = 0", CITE_CYBE))
    h = etingof_schiffmann(L, Bivector(R))
    chain.append(Step("h_r extraction", f"dim h_r = {h.dim} (rank of r)", CITE_ES))
    if h.dim == 0:
        chain.append(Step("restriction", "h_r = {0}: trivially consistent", CITE_ES))
        chain.append(Step("Killing form", "empty", CITE_KILLING))
        chain.append(Step("semisimplicity of h_r", "h_r = {0}, nothing to test", CITE_NOT_SEMISIMPLE))
        return Verdict(Answer.UNDETERMINED, tuple(chain))
    sub = restrict(L, h)
    r_res = restricted_r(R, h)
    chain.append(Step("restriction", f"restricted r has rank {rank(r_res)} of {h.dim} (non-degenerate)", CITE_ES))
    K = killing_form(sub).matrix
    chain.append(Step("Killing form", f"κ on h_r = {_matrix_str(K)}", CITE_KILLING))
    if is_semisimple(sub):
        chain.append(Step("semisimplicity of h_r", "semisimple", CITE_NOT_SEMISIMPLE))
        return Verdict(Answer.NO, tuple(chain), (INCONSISTENCY_FLAG,))
    chain.append(Step("semisimplicity of h_r", "not semisimple (consistent)", CITE_CARTAN))
    return Verdict(Answer.UNDETERMINED, tuple(chain))
