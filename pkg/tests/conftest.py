import pytest

from hubrknn import Graph, ObjectSet, build_pll_labels, degree_ordering

from fixtures import TREE14_EDGES, TREE14_OBJECTS


@pytest.fixture(scope="session")
def tree14() -> Graph:
    return Graph.from_edges(TREE14_EDGES)


@pytest.fixture(scope="session")
def tree14_labels(tree14):
    return build_pll_labels(tree14, degree_ordering(tree14))


@pytest.fixture(scope="session")
def tree14_objects() -> ObjectSet:
    return ObjectSet(TREE14_OBJECTS)
