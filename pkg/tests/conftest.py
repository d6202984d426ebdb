from __future__ import annotations

from contextlib import contextmanager
from time import perf_counter

import pytest

ACCEPTANCE_LINES: list[str] = []


def _emit(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture
def criterion():
    """Time a criterion body and print exactly one PASS/FAIL line for it."""

    @contextmanager
    def run(code: str, title: str, budget: float):
        start = perf_counter()
        try:
            yield
        except Exception as exc:
            elapsed = perf_counter() - start
            reason = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            _emit(f"FAIL {code} {title} ({elapsed:.2f}s, budget {budget:g}s): {reason}")
            raise
        elapsed = perf_counter() - start
        if elapsed > budget:
            _emit(f"FAIL {code} {title} ({elapsed:.2f}s exceeds budget {budget:g}s)")
            raise AssertionError(f"{code} took {elapsed:.2f}s, budget {budget:g}s")
        _emit(f"PASS {code} {title} ({elapsed:.2f}s, budget {budget:g}s)")

    return run


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
