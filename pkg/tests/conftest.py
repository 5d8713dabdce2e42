import time

import pytest

_LINES = []


class Criterion:
    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.detail = ""

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        slow = self.limit is not None and elapsed >= self.limit
        ok = exc_type is None and not slow
        note = self.detail or (str(exc) if exc else "")
        if slow and exc_type is None:
            note = f"took {elapsed:.2f}s, limit {self.limit}s"
        line = f"criterion {self.number:2d} {'PASS' if ok else 'FAIL'}  {self.title}  ({elapsed:.2f}s) {note}".rstrip()
        _LINES.append((self.number, line))
        print(line)
        if slow and exc_type is None:
            pytest.fail(note)
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_LINES):
            terminalreporter.write_line(line)
