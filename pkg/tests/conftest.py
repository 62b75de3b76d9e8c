from itertools import product

import pytest

from nsleak.uv import Relation

ACCEPTANCE_LINES: list[str] = []


def rel_xy(pairs):
    return Relation.from_tuples(("X", "Y"), pairs)


@pytest.fixture
def cor1():
    """The three-tuple instance {(x1,y1),(x2,y1),(x3,y2)}."""
    return rel_xy([("x1", "y1"), ("x2", "y1"), ("x3", "y2")])


@pytest.fixture
def rel2():
    return rel_xy([("x1", "y1"), ("x2", "y1"), ("x2", "y2"), ("x3", "y2")])


@pytest.fixture
def square():
    """Full product {x1,x2} x {y1,y2}: X and Y unrelated."""
    return rel_xy(product(["x1", "x2"], ["y1", "y2"]))


@pytest.fixture
def identity3():
    return rel_xy([(f"x{i}", f"x{i}") for i in range(1, 4)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
