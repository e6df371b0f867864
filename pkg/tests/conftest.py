import pytest

from qsclab.graphs import Graph, complete_graph, cycle_graph, path_graph, petersen_graph


@pytest.fixture
def k2() -> Graph:
    return Graph.from_edge_list(2, [(0, 1)])


@pytest.fixture
def p3() -> Graph:
    return path_graph(3)


@pytest.fixture
def c5() -> Graph:
    return cycle_graph(5)


@pytest.fixture
def triangle() -> Graph:
    return complete_graph(3)


@pytest.fixture
def petersen() -> Graph:
    return petersen_graph()
