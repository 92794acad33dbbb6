import contextlib
import time
from fractions import Fraction

import pytest

from hypothesis import strategies as st

from mackeylab.qlinalg import RationalMatrix

small_rationals = st.builds(
    Fraction, st.integers(-4, 4), st.integers(1, 3)
)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = draw(st.lists(st.lists(small_rationals, min_size=c, max_size=c), min_size=r, max_size=r))
    return RationalMatrix(rows, (r, c))


_CRITERIA = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_CRITERIA] = []


@pytest.fixture
def criterion(request):
    """Context manager timing one acceptance criterion and logging a PASS/FAIL line."""
    log = request.config.stash[_CRITERIA]

    @contextlib.contextmanager
    def run(label, budget_s):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            within = elapsed < budget_s
            status = "PASS" if ok and within else "FAIL"
            line = f"{status} {label} ({elapsed:.3f}s, budget {budget_s:g}s)"
            log.append(line)
            print(line)
        assert within, f"{label} took {elapsed:.3f}s, budget {budget_s}s"

    return run


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_CRITERIA, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
