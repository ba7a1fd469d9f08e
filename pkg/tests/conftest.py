import pytest

from cayleysum import parse_group_spec
from cayleysum.trees import Tree, path_tree


@pytest.fixture(scope="session")
def z2():
    return parse_group_spec("Z2")


@pytest.fixture(scope="session")
def z4():
    return parse_group_spec("Z4")


@pytest.fixture(scope="session")
def z22():
    return parse_group_spec("Z2^2")


@pytest.fixture(scope="session")
def z23():
    return parse_group_spec("Z2^3")


@pytest.fixture(scope="session")
def z8():
    return parse_group_spec("Z8")


def make_o3_tree() -> Tree:
    """9 vertices: u(deg 3) - v(deg 3) - w(deg 4), six leaves.

    Over Z3^2 the edge uv triggers the characteristic obstruction: both
    endpoint degrees are 0 mod 3, every other degree is 1 mod 3."""
    edges = [(0, 1), (1, 2), (0, 3), (0, 4), (1, 5), (2, 6), (2, 7), (2, 8)]
    return Tree.from_edges(9, edges)


def make_o4_tree() -> Tree:
    """8 vertices: v1(deg 4)-v2(deg 2), v1-v3(deg 2)-v4(deg 2), four leaves.

    Exactly four even-degree vertices {v1..v4} with the perfect matching
    {v1v2, v3v4} inside the tree."""
    edges = [(0, 1), (0, 2), (2, 3), (1, 4), (0, 5), (0, 6), (3, 7)]
    return Tree.from_edges(8, edges)


@pytest.fixture(scope="session")
def o3_tree():
    return make_o3_tree()


@pytest.fixture(scope="session")
def o4_tree():
    return make_o4_tree()


@pytest.fixture(scope="session")
def p4():
    return path_tree(4)


@pytest.fixture(scope="session")
def grid_rows():
    """The full n <= 9 cross-check grid, shared by several tests."""
    from cayleysum.harness import experiment_cross_check

    return experiment_cross_check(9, 8)
