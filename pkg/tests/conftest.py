import pytest

from nvranging.interferometer import RangingGeometry
from nvranging.physics import NVEnsembleParams


@pytest.fixture
def params():
    return NVEnsembleParams()


@pytest.fixture
def geometry():
    return RangingGeometry()


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    def _report(number: int, passed: bool, detail: str):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
