import sys
from pathlib import Path

import pytest

from grpd import builders
from grpd.textio import read_groupoid

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# file stem -> builder call that produced it
FIXTURE_FILES = {
    "p2": lambda: builders.pair(2),
    "p3": lambda: builders.pair(3),
    "b22": lambda: builders.bundle(builders.cyclic(2), builders.cyclic(2)),
    "b23": lambda: builders.bundle(builders.cyclic(2), builders.cyclic(3)),
    "b4s3": lambda: builders.bundle(builders.cyclic(4), builders.symmetric(3)),
    **{f"z{n}": (lambda n=n: builders.cyclic(n)) for n in range(1, 7)},
    "s3": lambda: builders.symmetric(3),
    "d4": lambda: builders.dihedral(4),
    "t6": lambda: builders.product(builders.pair(2), builders.symmetric(3)),
}

_cache = {}


def load(stem: str):
    if stem not in _cache:
        _cache[stem] = read_groupoid(FIXTURES / f"{stem}.grpd")
    return _cache[stem]


@pytest.fixture(scope="session")
def fx():
    return load


@pytest.fixture(params=sorted(FIXTURE_FILES))
def any_fixture(request):
    return load(request.param)


@pytest.fixture(params=sorted(s for s in FIXTURE_FILES if s != "t6"))
def small_fixture(request):
    """Fixtures small enough for 2^n subset scans."""
    return load(request.param)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
