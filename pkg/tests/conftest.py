import numpy as np
import pytest
from hypothesis import strategies as st

from pbsched.instance import Instance

_CRITERIA: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(key, passed, detail)``."""
    def record(key, passed, detail=""):
        _CRITERIA[key] = (bool(passed), detail)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: int(k.split()[0])):
        ok, detail = _CRITERIA[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}  {detail}")


@st.composite
def instances(draw, max_n=8, max_w=20, max_d=30):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_n))
    density = draw(st.sampled_from([0.3, 0.6, 0.9, 1.0]))
    cells = draw(st.lists(st.integers(1, max_w), min_size=n * m, max_size=n * m))
    present = draw(st.lists(st.floats(0, 1, exclude_max=True), min_size=n * m, max_size=n * m))
    w = np.array([c if p < density else 0 for c, p in zip(cells, present)]).reshape(n, m)
    if not w.any():
        w[draw(st.integers(0, n - 1)), draw(st.integers(0, m - 1))] = cells[0]
    return Instance(w, draw(st.integers(0, max_d)))
