from pathlib import Path

import pytest

from stablelc import QQ, PolyRing, make_mf

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
FIXTURES = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture
def x2_k():
    ring = PolyRing(QQ, ("x",))
    return make_mf(ring, "x^2", [["x"]], [["x"]], s=[0], t=[1])


@pytest.fixture
def xy_rx():
    ring = PolyRing(QQ, ("x", "y"))
    return make_mf(ring, "x*y", [["x"]], [["y"]], s=[0], t=[1])


# One line per acceptance criterion, filled in by test_acceptance.py.
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[num])
