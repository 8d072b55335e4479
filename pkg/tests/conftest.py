import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from selfcross.gauss_code import GaussCode  # noqa: E402
from selfcross.planar_map import distinct_realizations  # noqa: E402

ACCEPTANCE: dict[int, tuple[str, bool]] = {}


@pytest.fixture(scope="session")
def config5():
    return distinct_realizations(GaussCode([1, 1, 2, 2, 3, 3]))[0]


@pytest.fixture(scope="session")
def config6():
    return distinct_realizations(GaussCode([1, 1, 2, 2, 3, 3]))[1]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {title}")
