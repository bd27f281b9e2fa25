import numpy as np
import pytest

from lftstat.gf2 import BitMatrix
from lftstat.transducer import Lft, identity_lft, unit_delay

_acceptance_lines: list[str] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, text): exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, text = marker.args
        status = "PASS" if report.outcome == "passed" else "FAIL"
        _acceptance_lines.append(f"[{status}] criterion {number:>2}: {text} ({report.duration:.1f}s)")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def delay1() -> Lft:
    return unit_delay()


@pytest.fixture
def ident2() -> Lft:
    return identity_lft(2)


def random_lft_from(rng, l, m, n) -> Lft:
    def mat(r, c):
        return BitMatrix.from_array(rng.integers(0, 2, size=(r, c)))

    return Lft(l, m, n, mat(n, n), mat(n, l), mat(m, n), mat(m, l))
