"""Truncated ħ-series star products on polynomials in x1, x2.

Bidifferential operators with constant coefficients commute, so an operator
``Σ c (∂^α ⊗ ∂^β)`` is stored as a polynomial in four commuting symbols and
composition is plain multiplication.  Series are truncated hard at ħ^N.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import factorial
from typing import Callable, Generic, Iterable, Mapping, Sequence, TypeVar

from .core.report import Check, Report
from .core.scalar import I, ONE, ZERO, Scalar, S, format_scalar

Exp = tuple  # (a, b) exponent pair


def _clean(terms: Mapping) -> dict:
    return {k: S(v) for k, v in terms.items() if S(v)}


def _falling(n: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= n - t
    return out


class PolyParseError(ValueError):
    def __init__(self, text: str, position: int, reason: str):
        super().__init__(f"position {position}: {reason} in {text!r}")
        self.text = text
        self.position = position
        self.reason = reason


class Poly:
    """Polynomial in x1, x2 with Gaussian-rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exp, Scalar] | None = None):
        object.__setattr__(self, "terms", _clean(terms or {}))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c=1) -> "Poly":
        return cls({(a, b): c})

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return Poly(out)

    def __neg__(self):
        return Poly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = S(other)
            return Poly({k: v * c for k, v in self.terms.items()})
        out: dict = {}
        for (a, b), u in self.terms.items():
            for (c, d), v in other.terms.items():
                k = (a + c, b + d)
                out[k] = out.get(k, ZERO) + u * v
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self, alpha: Exp) -> "Poly":
        """∂1^α[0] ∂2^α[1]."""
        p, q = alpha
        out = {}
        for (a, b), c in self.terms.items():
            if a >= p and b >= q:
                out[(a - p, b - q)] = c * (_falling(a, p) * _falling(b, q))
        return Poly(out)

    @property
    def degree(self) -> int:
        return max((a + b for a, b in self.terms), default=-1)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _monomial_str(a: int, b: int) -> str:
    parts = []
    for name, e in (("x1", a), ("x2", b)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text in the expression grammar; degree-descending."""
    if not p.terms:
        return "0"
    out = []
    for (a, b) in sorted(p.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
        c = p.terms[(a, b)]
        mono = _monomial_str(a, b)
        neg = c.is_real() and c.re < 0
        mag = -c if neg else c
        coef = format_scalar(mag)
        if not c.is_real() and c.re != 0:
            coef = f"({coef})"
        if not mono:
            body = coef
        elif mag == ONE:
            body = mono
        else:
            body = f"{coef}*{mono}"
        if out:
            out.append(("- " if neg else "+ ") + body)
        else:
            out.append(("-" if neg else "") + body)
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x1|x2)|(?P<i>i)|(?P<op>[-+*^()]))")


def parse_poly(text: str) -> Poly:
    """Parse literals, x1, x2, i, + - * ^ (nonnegative integer powers) and parentheses."""
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            at = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolyParseError(text, at, f"unexpected character {text[at]!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    k = 0

    def peek():
        return tokens[k]

    def take():
        nonlocal k
        tok = tokens[k]
        k += 1
        return tok

    def expr() -> Poly:
        out = term()
        while peek()[1] in ("+", "-") and peek()[0] == "op":
            op = take()[1]
            rhs = term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term() -> Poly:
        out = unary()
        while peek() == ("op", "*", peek()[2]):
            take()
            out = out * unary()
        return out

    def unary() -> Poly:
        if peek()[0] == "op" and peek()[1] in ("+", "-"):
            op = take()[1]
            val = unary()
            return -val if op == "-" else val
        return power()

    def power() -> Poly:
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            kind, val, at = take()
            if kind != "num" or "/" in val:
                raise PolyParseError(text, at, "exponent must be a nonnegative integer")
            return base ** int(val)
        return base

    def atom() -> Poly:
        kind, val, at = take()
        if kind == "num":
            try:
                return Poly.const(S(val))
            except (ValueError, ZeroDivisionError):
                raise PolyParseError(text, at, "zero denominator") from None
        if kind == "var":
            return Poly.monomial(1, 0) if val == "x1" else Poly.monomial(0, 1)
        if kind == "i":
            return Poly.const(I)
        if kind == "op" and val == "(":
            inner = expr()
            kind2, val2, at2 = take()
            if val2 != ")":
                raise PolyParseError(text, at2, "expected ')'")
            return inner
        if kind == "end":
            raise PolyParseError(text, at, "unexpected end of input")
        raise PolyParseError(text, at, f"unexpected {val!r}")

    result = expr()
    if peek()[0] != "end":
        raise PolyParseError(text, peek()[2], f"unexpected {peek()[1]!r}")
    return result


class BidiffOp:
    """Σ coeff·(∂^α ⊗ ∂^β) with constant coefficients; keys are (α, β)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        if not isinstance(terms, Mapping):
            acc: dict = {}
            for alpha, beta, c in terms:
                key = (tuple(alpha), tuple(beta))
                acc[key] = acc.get(key, ZERO) + S(c)
            terms = acc
        object.__setattr__(self, "terms", _clean(terms))

    def __setattr__(self, name, value):
        raise AttributeError("BidiffOp is immutable")

    @classmethod
    def identity(cls) -> "BidiffOp":
        return cls({((0, 0), (0, 0)): ONE})

    @classmethod
    def zero(cls) -> "BidiffOp":
        return cls()

    def term_list(self) -> list[tuple[Exp, Exp, Scalar]]:
        return [(a, b, c) for (a, b), c in sorted(self.terms.items())]

    def __eq__(self, other):
        return isinstance(other, BidiffOp) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "BidiffOp") -> "BidiffOp":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return BidiffOp(out)

    def __neg__(self):
        return BidiffOp({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Composition; operators with constant coefficients commute."""
        if not isinstance(other, BidiffOp):
            c = S(other)
            return BidiffOp({k: v * c for k, v in self.terms.items()})
        out: dict = {}
        for ((a1, a2), (b1, b2)), u in self.terms.items():
            for ((c1, c2), (d1, d2)), v in other.terms.items():
                k = ((a1 + c1, a2 + c2), (b1 + d1, b2 + d2))
                out[k] = out.get(k, ZERO) + u * v
        return BidiffOp(out)

    __rmul__ = __mul__

    def braid(self) -> "BidiffOp":
        """σ: ∂^α ⊗ ∂^β ↦ ∂^β ⊗ ∂^α."""
        return BidiffOp({(b, a): c for (a, b), c in self.terms.items()})

    def apply(self, f: Poly, g: Poly) -> Poly:
        """m(B ▷ (f ⊗ g)) = Σ c ∂^α f · ∂^β g."""
        out = Poly()
        for (a, b), c in self.terms.items():
            fa = f.derivative(a)
            if not fa:
                continue
            gb = g.derivative(b)
            if gb:
                out = out + fa * gb * c
        return out

    def is_antisymmetric(self) -> bool:
        return self.braid() == -self

    def to_matrix(self):
        """First-order part as a 2×2 matrix r[i][j] on span{∂1, ∂2}; errors if not first order."""
        from .core.linalg import Matrix

        rows = [[ZERO, ZERO], [ZERO, ZERO]]
        for (a, b), c in self.terms.items():
            if sum(a) != 1 or sum(b) != 1:
                raise ValueError("operator is not of the form Σ r^ij ∂_i ⊗ ∂_j")
            rows[a.index(1)][b.index(1)] = c
        return Matrix(rows)

    def __repr__(self):
        return f"BidiffOp({self.term_list()!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for a, b, c in self.term_list():
            parts.append(f"({format_scalar(c)})*{_d(a)}⊗{_d(b)}")
        return " + ".join(parts)


def _d(alpha: Exp) -> str:
    parts = [f"d{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(alpha) if e]
    return "·".join(parts) if parts else "1"


X_OP = BidiffOp([((1, 0), (0, 1), 1), ((0, 1), (1, 0), -1)])  # ∂1⊗∂2 − ∂2⊗∂1

T = TypeVar("T")


@dataclass(frozen=True)
class HbarSeries(Generic[T]):
    """Σ_{r=0..N} ħ^r coeffs[r], truncated at ħ^N."""

    order: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"order {self.order} needs {self.order + 1} coefficients")

    def __getitem__(self, r: int) -> T:
        return self.coeffs[r]

    def _check(self, other: "HbarSeries"):
        if other.order != self.order:
            raise ValueError(f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        self._check(other)
        return HbarSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return HbarSeries(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        """Cauchy product, dropping everything beyond ħ^N."""
        self._check(other)
        N = self.order
        out = []
        for r in range(N + 1):
            acc = self.coeffs[0] * other.coeffs[r]
            for j in range(1, r + 1):
                acc = acc + self.coeffs[j] * other.coeffs[r - j]
            out.append(acc)
        return HbarSeries(N, tuple(out))

    def valuation(self) -> int | None:
        """Lowest order with a nonzero coefficient; None for the zero series."""
        for r, c in enumerate(self.coeffs):
            if c:
                return r
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None


def series_inverse(F: HbarSeries) -> HbarSeries:
    """J with F·J = 1 for F_0 = identity, via J_i = −Σ_{j=1..i} F_j J_{i−j}."""
    if F[0] != BidiffOp.identity():
        raise ValueError("series inverse needs F_0 = identity")
    J = [BidiffOp.identity()]
    for i in range(1, F.order + 1):
        acc = BidiffOp.zero()
        for j in range(1, i + 1):
            acc = acc + F[j] * J[i - j]
        J.append(-acc)
    return HbarSeries(F.order, tuple(J))


@dataclass(frozen=True)
class TwistSeries:
    F: HbarSeries
    Finv: HbarSeries

    def __post_init__(self):
        if self.F.order != self.Finv.order:
            raise ValueError("F and Finv have different orders")
        if self.F[0] != BidiffOp.identity():
            raise ValueError("F_0 must be the identity operator")
        one = HbarSeries(self.order, (BidiffOp.identity(),) + (BidiffOp.zero(),) * self.order)
        if self.F * self.Finv != one or self.Finv * self.F != one:
            raise ValueError("F·Finv is not the identity modulo the truncation order")

    @property
    def order(self) -> int:
        return self.F.order

    @classmethod
    def from_F(cls, F: HbarSeries) -> "TwistSeries":
        return cls(F, series_inverse(F))

    @classmethod
    def trivial(cls, N: int) -> "TwistSeries":
        return cls.from_F(HbarSeries(N, (BidiffOp.identity(),) + (BidiffOp.zero(),) * N))

    def with_coefficient(self, r: int, op: BidiffOp) -> "TwistSeries":
        """Replace F_r (r ≥ 1) and recompute the inverse."""
        if r < 1:
            raise ValueError("F_0 is fixed to the identity")
        coeffs = list(self.F.coeffs)
        coeffs[r] = op
        return TwistSeries.from_F(HbarSeries(self.order, tuple(coeffs)))


def moyal_twist(c=I, N: int = 4) -> TwistSeries:
    """F = exp(−c ħ X), X = ∂1⊗∂2 − ∂2⊗∂1; the inverse comes from the recursion."""
    if N < 1:
        raise ValueError("order must be at least 1")
    c = S(c)
    F = [BidiffOp.identity()]
    power = BidiffOp.identity()
    for k in range(1, N + 1):
        power = power * X_OP
        F.append(power * ((-c) ** k / factorial(k)))
    T = TwistSeries.from_F(HbarSeries(N, tuple(F)))
    expected = [BidiffOp.identity()]
    power = BidiffOp.identity()
    for k in range(1, N + 1):
        power = power * X_OP
        expected.append(power * (c ** k / factorial(k)))
    if T.Finv.coeffs != tuple(expected):
        raise AssertionError("recursive inverse disagrees with exp(+c ħ X)")
    return T


def twist_product(T: TwistSeries, f: Poly, g: Poly) -> HbarSeries:
    """f ⋆ g = Σ_r ħ^r m(Finv_r ▷ (f ⊗ g))."""
    return HbarSeries(T.order, tuple(op.apply(f, g) for op in T.Finv.coeffs))


def _star_series(T: TwistSeries, P: HbarSeries, Q: HbarSeries) -> HbarSeries:
    N = T.order
    out = [Poly() for _ in range(N + 1)]
    for r in range(N + 1):
        for s in range(N + 1 - r):
            for t in range(N + 1 - r - s):
                if P[r] and Q[s] and T.Finv[t]:
                    out[r + s + t] = out[r + s + t] + T.Finv[t].apply(P[r], Q[s])
    return HbarSeries(N, tuple(out))


def _const_series(N: int, f: Poly) -> HbarSeries:
    return HbarSeries(N, (f,) + (Poly(),) * N)


def associator(T: TwistSeries, f: Poly, g: Poly, h: Poly, N: int | None = None) -> HbarSeries:
    """(f⋆g)⋆h − f⋆(g⋆h), truncated at ħ^N."""
    N = T.order if N is None else N
    if N > T.order:
        raise ValueError(f"requested order {N} exceeds twist order {T.order}")
    F, G, Hh = (_const_series(T.order, p) for p in (f, g, h))
    diff = _star_series(T, _star_series(T, F, G), Hh) - _star_series(T, F, _star_series(T, G, Hh))
    return HbarSeries(N, diff.coeffs[: N + 1])


def check_associativity(T: TwistSeries, f: Poly, g: Poly, h: Poly, N: int | None = None) -> Report:
    res = associator(T, f, g, h, N)
    bad = tuple((r, format_poly(p)) for r, p in enumerate(res.coeffs) if p)
    return Report(
        "associativity",
        (Check(f"associative mod hbar^{res.order + 1}", not bad, bad),),
        {"residual": [format_poly(p) for p in res.coeffs], "first_failing_order": res.valuation()},
    )


def extract_rmatrix(T: TwistSeries) -> BidiffOp:
    """r = σ(F_1) − F_1."""
    if T.order < 1:
        raise ValueError("order must be at least 1")
    return T.F[1].braid() - T.F[1]


def poisson_compatibility(T: TwistSeries, f: Poly, g: Poly) -> Report:
    """C_1(f,g) − C_1(g,f) against m(r ▷ (f⊗g))."""
    c1 = T.Finv[1]
    lhs = c1.apply(f, g) - c1.apply(g, f)
    rhs = extract_rmatrix(T).apply(f, g)
    return Report(
        "poisson compatibility",
        (Check("C1(f,g) - C1(g,f) = m(r(f⊗g))", lhs == rhs, () if lhs == rhs else (format_poly(lhs), format_poly(rhs))),),
        {"lhs": format_poly(lhs), "rhs": format_poly(rhs)},
    )


def weyl_moyal_reference(f: Poly, g: Poly, N: int) -> HbarSeries:
    """Double-sum Weyl–Moyal product with q = x1, p = x2:

    Σ_{m,n} (iħ/2)^{m+n} (−1)^m / (m! n!) (∂p^m ∂q^n f)(∂p^n ∂q^m g).
    """
    out = [Poly() for _ in range(N + 1)]
    half_i = I / 2
    for k in range(N + 1):
        for m in range(k + 1):
            n = k - m
            coef = half_i ** k * ((-1) ** m) / (factorial(m) * factorial(n))
            left = f.derivative((n, m))
            if not left:
                continue
            right = g.derivative((m, n))
            if right:
                out[k] = out[k] + left * right * coef
    return HbarSeries(N, tuple(out))


def convention_factor(c, k: int) -> Scalar:
    """Order-k coefficient of moyal_twist(c) ⋆ equals (−2ic)^k times the Weyl–Moyal one."""
    return (-2 * I * S(c)) ** k


def star_commutator(T: TwistSeries, f: Poly, g: Poly) -> HbarSeries:
    return twist_product(T, f, g) - twist_product(T, g, f)


def random_monomial(rng, max_degree: int = 3) -> Poly:
    deg = rng.randint(0, max_degree)
    a = rng.randint(0, deg)
    return Poly.monomial(a, deg - a)


def random_poly(rng, max_degree: int = 3, lo: int = -3, hi: int = 3) -> Poly:
    terms = {}
    for _ in range(rng.randint(1, 4)):
        deg = rng.randint(0, max_degree)
        a = rng.randint(0, deg)
        terms[(a, deg - a)] = S(rng.randint(lo, hi))
    return Poly(terms)
