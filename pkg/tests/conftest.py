import pytest

from caputo_ostrowski.functions import Interval

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def unit():
    return Interval(0.0, 1.0)


@pytest.fixture
def record_acceptance():
    def record(label: str, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
