import time
from dataclasses import dataclass, field

import pytest

_KEY = pytest.StashKey[dict]()


@dataclass
class Criterion:
    number: int
    title: str
    limit: float | None = None
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    def check(self, ok: bool, detail: str):
        if not ok:
            self.failures.append(detail)

    @property
    def passed(self) -> bool:
        return not self.failures and (self.limit is None or self.elapsed < self.limit)

    def line(self) -> str:
        timing = f"{self.elapsed:.2f}s" + (f" < {self.limit:g}s" if self.limit is not None else "")
        status = "PASS" if self.passed else "FAIL"
        out = f"criterion {self.number}: {status} [{timing}] {self.title}"
        if self.failures:
            out += f" ({len(self.failures)} failures; first: {self.failures[0]})"
        elif not self.passed:
            out += " (time limit exceeded)"
        return out


class _Recorder:
    def __init__(self, registry: dict):
        self.registry = registry

    def __call__(self, number: int, title: str, limit: float | None = None):
        return _Run(self.registry, Criterion(number, title, limit))


class _Run:
    def __init__(self, registry: dict, crit: Criterion):
        self.registry, self.crit = registry, crit

    def __enter__(self) -> Criterion:
        self.start = time.perf_counter()
        return self.crit

    def __exit__(self, exc_type, exc, tb):
        self.crit.elapsed = time.perf_counter() - self.start
        if exc is not None:
            self.crit.failures.append(f"{exc_type.__name__}: {exc}")
        self.registry[self.crit.number] = self.crit
        print(self.crit.line())
        assert self.crit.passed, self.crit.line()
        return False


@pytest.fixture
def criterion(request):
    return _Recorder(request.config.stash.setdefault(_KEY, {}))


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_KEY, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n].line())
