import numpy as np
import pytest

from kaczfourier import AtomicMeasure, FunctionOnSupport


def random_atomic(rng, n_atoms, min_gap=0.05):
    """Random atomic probability measure with circular atom spacing >= min_gap."""
    while True:
        x = np.sort(rng.random(n_atoms))
        gaps = np.diff(np.r_[x, x[0] + 1.0])
        if gaps.min() >= min_gap:
            break
    w = rng.random(n_atoms) + 0.1
    w = w / w.sum()
    # push rounding of the mass into the last weight
    w[-1] = 1.0 - w[:-1].sum()
    return AtomicMeasure(x, w)


def random_function(rng, m):
    return FunctionOnSupport(m, rng.standard_normal(m.size) + 1j * rng.standard_normal(m.size))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def two_atom():
    return AtomicMeasure([0.0, 0.5], [0.5, 0.5])


@pytest.fixture
def random_measures():
    rng = np.random.default_rng(777)
    return [random_atomic(rng, int(rng.integers(2, 7))) for _ in range(8)]


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
