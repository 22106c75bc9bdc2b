"""Exact Gaussian rationals a/b + (c/d)i.

Every coefficient in the package is a :class:`Scalar`.  Values are immutable,
hashable and compare equal to ints and Fractions with zero imaginary part.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["Scalar", "ScalarLike", "ScalarParseError", "S", "parse_scalar", "ZERO", "ONE", "I"]

ScalarLike = Union["Scalar", int, Fraction, str]


class ScalarParseError(ValueError):
    """Malformed scalar literal.  ``position`` is the 0-based offset of the problem."""

    def __init__(self, text: str, position: int, reason: str):
        super().__init__(f"bad scalar literal {text!r} at position {position}: {reason}")
        self.text = text
        self.position = position
        self.reason = reason


class Scalar:
    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        if isinstance(re, Scalar) or isinstance(re, str):
            raise TypeError("use S() to coerce")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> Scalar:
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # public field names
    @property
    def real_num(self) -> int:
        return self.re.numerator

    @property
    def real_den(self) -> int:
        return self.re.denominator

    @property
    def imag_num(self) -> int:
        return self.im.numerator

    @property
    def imag_den(self) -> int:
        return self.im.denominator

    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> Scalar:
        return Scalar._raw(self.re, -self.im)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return Scalar._raw(self.re * o.re, self.im)
        return Scalar._raw(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero Scalar")
        if not o.im:
            return Scalar._raw(self.re / o.re, self.im / o.re)
        n = o.re * o.re + o.im * o.im
        return Scalar._raw((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ONE / (self ** (-k))
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"S({str(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _coerce(x) -> Scalar | None:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)):
        return Scalar._raw(Fraction(x), Fraction(0))
    return None


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    """Render in the literal grammar: ``p/q``, ``r/s*i`` or ``p/q+r/s*i``."""
    if not s.im:
        return _frac_str(s.re)
    im = _frac_str(abs(s.im)) + "*i"
    if not s.re:
        return ("-" if s.im < 0 else "") + im
    return _frac_str(s.re) + ("-" if s.im < 0 else "+") + im


_NUM = r"\d+(?:/\d+)?"
_LITERAL = re.compile(
    rf"^(?P<re>[+-]?{_NUM})?(?P<im>[+-]?(?:{_NUM}\*)?i)?$"
)


_IMAGINARY = re.compile(rf"^(?P<im>[+-]?(?:{_NUM}\*)?i)$")


def parse_scalar(text: str) -> Scalar:
    """Parse a scalar literal; whitespace is ignored everywhere."""
    if not isinstance(text, str):
        raise ScalarParseError(repr(text), 0, "expected a string")
    compact = "".join(text.split())
    if not compact:
        raise ScalarParseError(text, 0, "empty literal")
    m = _IMAGINARY.match(compact) or _LITERAL.match(compact)
    groups = m.groupdict() if m else {}
    if m is None or (groups.get("re") is None and groups.get("im") is None):
        raise ScalarParseError(text, _first_bad(compact), "does not match p/q+r/s*i")
    if groups.get("re") and groups.get("im") and groups["im"][0] not in "+-":
        raise ScalarParseError(text, m.start("im"), "imaginary part needs an explicit sign")
    re_part = _parse_frac(text, groups["re"]) if groups.get("re") else Fraction(0)
    im_part = Fraction(0)
    if m.group("im"):
        body = m.group("im")
        sign = -1 if body.startswith("-") else 1
        body = body.lstrip("+-")
        im_part = sign * (_parse_frac(text, body[:-2]) if body != "i" else Fraction(1))
    return Scalar._raw(re_part, im_part)


def _parse_frac(text: str, token: str) -> Fraction:
    num, _, den = token.partition("/")
    if den and int(den) == 0:
        raise ScalarParseError(text, text.find("/"), "zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def _first_bad(compact: str) -> int:
    for pos, ch in enumerate(compact):
        if ch not in "0123456789/+-*i":
            return pos
    return len(compact) - 1


def S(x: ScalarLike) -> Scalar:
    """Coerce an int, Fraction, literal string or Scalar to a Scalar."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Rational)):
        return Scalar._raw(Fraction(x), Fraction(0))
    raise TypeError(f"cannot make a Scalar from {type(x).__name__}")


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
