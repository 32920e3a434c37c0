import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from localcoh import Modulus, ModMatrix, enumerate_group  # noqa: E402
from localcoh.torus import gamma1, gamma2  # noqa: E402


@pytest.fixture
def mod9():
    return Modulus(3, 2)


@pytest.fixture
def gp3():
    """G_p = <gamma1, gamma2> for p = 3."""
    return enumerate_group(Modulus(3, 2), 2, [gamma1(3), gamma2(3)])


@pytest.fixture
def g18(mod9):
    return enumerate_group(mod9, 2, [gamma1(3), ModMatrix.scalar(mod9, 2, 2)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
