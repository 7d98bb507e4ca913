import gzip
from pathlib import Path

import pytest

from silentmine import kernels
from silentmine.calllog import parse_log

FIXTURES = Path(__file__).parent / "fixtures"
ACCEPTANCE_SEEDS = range(20)

_acceptance_lines = []


def load_fixture(seed: int):
    blob = gzip.decompress((FIXTURES / f"planted_friday_seed{seed:02d}.csv.gz").read_bytes())
    return parse_log(blob)


@pytest.fixture(scope="session")
def planted_logs():
    return {seed: load_fixture(seed) for seed in ACCEPTANCE_SEEDS}


@pytest.fixture(params=["jit", "numpy"])
def kernel_path(request, monkeypatch):
    """Run a test once through each kernel implementation."""
    if request.param == "jit" and not kernels.NUMBA_AVAILABLE:
        pytest.skip("numba not installed")
    monkeypatch.setattr(kernels, "USE_JIT", request.param == "jit")
    return request.param


@pytest.fixture
def acceptance_report():
    def report(criterion: str, passed: bool, detail: str = ""):
        line = f"[{'PASS' if passed else 'FAIL'}] {criterion}" + (f" :: {detail}" if detail else "")
        print(line)
        _acceptance_lines.append(line)

    return report


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
