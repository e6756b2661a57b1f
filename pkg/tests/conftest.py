import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vaxnet import from_edge_list

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def triangle():
    return from_edge_list([(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def path3():
    return from_edge_list([(0, 1), (1, 2)])


@pytest.fixture
def path4():
    return from_edge_list([(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def star5():
    # hub 0 with four leaves
    return from_edge_list([(0, i) for i in range(1, 5)])


@pytest.fixture
def k4():
    return from_edge_list([(i, j) for i in range(4) for j in range(i + 1, 4)])


@pytest.fixture
def cycle4():
    return from_edge_list([(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def two_edges():
    # two disjoint edges, 4 nodes
    return from_edge_list([(0, 1), (2, 3)])


@pytest.fixture
def contact_files():
    files = sorted(DATA_DIR.glob("contacts_day*.txt"))
    assert files, "bundled contact fixtures missing"
    return files


def pytest_terminal_summary(terminalreporter):
    # checklist lines are also print()ed per test; repeat them here so a
    # plain `pytest -v` run (captured stdout) still shows the verdicts
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", ()) if mod else ()
    if lines:
        terminalreporter.section("acceptance checklist")
        for line in lines:
            terminalreporter.write_line(line)
