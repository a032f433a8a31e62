import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion and assert it."""

    def record(cid: str, checks: list[tuple[str, bool]]):
        failed = [name for name, ok in checks if not ok]
        ok = not failed
        detail = "; ".join(name for name, _ in checks) if ok else "failed: " + "; ".join(failed)
        line = f"{'PASS' if ok else 'FAIL'} {cid}: {detail}"
        _ACCEPTANCE.append((cid, ok, line))
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, _, line in sorted(_ACCEPTANCE, key=lambda r: int(r[0].lstrip("C"))):
        terminalreporter.write_line(line)
