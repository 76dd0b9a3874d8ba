import contextlib
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance_lines: list[str] = []


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def criterion():
    """Record a one-line PASS/FAIL verdict for an acceptance criterion."""

    @contextlib.contextmanager
    def record(label: str):
        info: dict = {}
        try:
            yield info
        except BaseException as exc:
            _acceptance_lines.append(f"FAIL {label} -- {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}")
            raise
        else:
            extra = " ".join(f"{k}={v}" for k, v in info.items())
            _acceptance_lines.append(f"PASS {label}" + (f" {extra}" if extra else ""))

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
