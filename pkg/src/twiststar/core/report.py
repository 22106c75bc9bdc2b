"""Pass/fail results that carry their witnesses.

Mathematical failures are data, not exceptions: every checker returns a
:class:`Check` (one identity) or a :class:`Report` (several named identities).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witnesses: tuple = ()
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "witnesses": [_jsonable(w) for w in self.witnesses],
            "detail": self.detail,
        }

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "Check":
        return cls(doc["name"], doc["passed"], tuple(_tupled(w) for w in doc.get("witnesses", ())), doc.get("detail", ""))


@dataclass(frozen=True)
class Report:
    title: str
    checks: tuple[Check, ...] = ()
    data: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "data": {k: _jsonable(v) for k, v in self.data.items()},
        }

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "Report":
        return cls(doc["title"], tuple(Check.from_json(c) for c in doc["checks"]), dict(doc.get("data", {})))

    def lines(self) -> list[str]:
        out = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            line = f"  [{'pass' if c.passed else 'FAIL'}] {c.name}"
            if c.detail:
                line += f" - {c.detail}"
            out.append(line)
            for w in c.witnesses[:10]:
                out.append(f"      witness {_jsonable(w)}")
            if len(c.witnesses) > 10:
                out.append(f"      ... {len(c.witnesses) - 10} more")
        return out


def _jsonable(x):
    from .scalar import Scalar

    if isinstance(x, Scalar):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if hasattr(x, "rows") and hasattr(x, "shape"):
        return [[str(v) for v in r] for r in x.rows]
    return x


def _tupled(x):
    if isinstance(x, list):
        return tuple(_tupled(y) for y in x)
    return x
