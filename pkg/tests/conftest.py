import numpy as np
import pytest

from truncfourier.mellin import TransformPlan, reference_plan

# acceptance lines collected by tests/test_acceptance.py, echoed at session end
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def ref_plan():
    return reference_plan()


@pytest.fixture(scope="session")
def small_plan():
    return TransformPlan(-12.0, 12.0, 2**12)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def rel_l2(plan, a, b, mask=None):
    """Relative L^2(R+, dt) error of samples ``a`` against ``b``."""
    w = plan.t if mask is None else plan.t[mask]
    a = np.asarray(a) if mask is None else np.asarray(a)[mask]
    b = np.asarray(b) if mask is None else np.asarray(b)[mask]
    return float(np.sqrt(np.sum(w * np.abs(a - b) ** 2) / np.sum(w * np.abs(b) ** 2)))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
