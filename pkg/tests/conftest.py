import pytest

from theodorus import _accel

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=_accel.BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def record_criterion():
    def record(label: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" -- {detail}" if detail else "")
        print(line)
        ACCEPTANCE_LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
