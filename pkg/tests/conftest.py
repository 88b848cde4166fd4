import math

import pytest

from jordan_geo.generators import comb, equilateral, koch_prefix, l_shape, random_simple, spiral, square
from jordan_geo.polygon import triangulate

SQRT2 = math.sqrt(2.0)


class Domain:
    def __init__(self, name, poly):
        self.name = name
        self.poly = poly
        self.tri = triangulate(poly)

    def __repr__(self):
        return f"Domain({self.name})"


def _gallery():
    return {
        "square": square(),
        "l_shape": l_shape(),
        "equilateral": equilateral(),
        "comb4": comb(4),
        "spiral3": spiral(3),
        "koch3": koch_prefix(3),
        "random25": random_simple(25, 4),
    }


_CACHE = {}


def domain(name) -> Domain:
    if name not in _CACHE:
        _CACHE[name] = Domain(name, _gallery()[name])
    return _CACHE[name]


GALLERY = list(_gallery())


@pytest.fixture
def sq():
    return domain("square")


@pytest.fixture
def ell():
    return domain("l_shape")


@pytest.fixture(params=GALLERY)
def any_domain(request):
    return domain(request.param)


# one line per acceptance criterion, echoed after the run
ACCEPTANCE: dict[int, str] = {}


def record(number: int, ok: bool, summary: str) -> None:
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {summary}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
