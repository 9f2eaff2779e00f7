import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from isocontact.linalg import IntMatrix  # noqa: E402
from isocontact.openbook import random_open_book  # noqa: E402

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture
def samples_dir() -> Path:
    return SAMPLES


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240518)


@st.composite
def int_matrices(draw, max_dim=6, bound=9, min_dim=1):
    rows = draw(st.integers(min_dim, max_dim))
    cols = draw(st.integers(min_dim, max_dim))
    entries = draw(st.lists(st.integers(-bound, bound), min_size=rows * cols, max_size=rows * cols))
    return IntMatrix(rows, cols, entries)


@st.composite
def open_books(draw, signs=(1, -1), max_length=6):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_open_book(random.Random(seed), max_length=max_length, signs=signs)


# one summary line per acceptance criterion

_criteria: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    # the call phase decides, unless setup already failed
    if report.when == "call" or (report.when == "setup" and not report.passed):
        for name, value in report.user_properties:
            if name == "criterion":
                cid, title = value
                _criteria[cid] = ("PASS" if report.passed else "FAIL", title)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", (m.args[0], m.args[1])))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_criteria):
        status, title = _criteria[cid]
        terminalreporter.write_line(f"criterion {cid:2d}: {status}  {title}")
