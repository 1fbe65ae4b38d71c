import itertools

import pytest

from gmt import GroupSpec
from gmt.cayley import GenSet
from gmt.group import parse_word

TEST_MATRICES = ["2", "1,1;0,1", "2,1;1,1", "1"]

ACCEPTANCE_LINES = []


def naive_ball_sizes(spec, gens: GenSet, n):
    """|B(i)| for i <= n by evaluating every word of length <= n over Y u Y^-1.

    Words are spelled out as token lists and evaluated from scratch, so no
    BFS bookkeeping is shared with the code under test.
    """
    words = [parse_word(lab) for lab in gens.labels]
    seen = set()
    sizes = []
    for length in range(n + 1):
        for combo in itertools.product(words, repeat=length):
            seen.add(spec.element_from_word([tok for w in combo for tok in w]))
        sizes.append(len(seen))
    return sizes


@pytest.fixture(scope="session")
def bs12():
    return GroupSpec.parse("2")


@pytest.fixture(scope="session")
def heis():
    return GroupSpec.parse("1,1;0,1")


@pytest.fixture(scope="session")
def cat_map():
    return GroupSpec.parse("2,1;1,1")


@pytest.fixture(scope="session")
def z2():
    return GroupSpec.parse("1")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
