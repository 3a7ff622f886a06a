import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from bohrlogic.blocks import BlockPoset  # noqa: E402
from bohrlogic.catalog import WORKED_EXAMPLE_BLOCKS, chain, horizontal_sum, powerset, worked_example  # noqa: E402
from bohrlogic.heyting import bohrify  # noqa: E402
from bohrlogic.lattice import FiniteOrtholattice  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def X():
    return worked_example()


@pytest.fixture(scope="session")
def index_blocks(X):
    return BlockPoset.from_carriers(X, WORKED_EXAMPLE_BLOCKS, add_bottom=False)


@pytest.fixture(scope="session")
def Y(index_blocks):
    return bohrify(index_blocks)


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def orthomodular_corpus():
    return [
        ("chain2", chain(2)),
        ("pow1", powerset(1)),
        ("pow2", powerset(2)),
        ("pow3", powerset(3)),
        ("mo2", horizontal_sum(2)),
        ("mo3", horizontal_sum(3)),
        ("mo4", horizontal_sum(4)),
        ("worked", worked_example()),
    ]


@st.composite
def moore_lattices(draw, max_points: int = 4, max_sets: int = 7):
    """Lattice of an intersection-closed family of subsets (random)."""
    m = draw(st.integers(1, max_points))
    full = (1 << m) - 1
    sets = set(draw(st.lists(st.integers(0, full), max_size=max_sets)))
    sets.add(full)
    changed = True
    while changed:
        changed = False
        for a in list(sets):
            for b in list(sets):
                if a & b not in sets:
                    sets.add(a & b)
                    changed = True
    fam = sorted(sets)
    order = np.array([[a & ~b == 0 for b in fam] for a in fam], dtype=bool)
    labels = ["{" + ",".join(str(i) for i in range(m) if s >> i & 1) + "}" for s in fam]
    return FiniteOrtholattice(labels, order)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
