import pytest

from algoweb import GraphBuilder


def build_graph(n, edges, connected_hint=None):
    b = GraphBuilder(n)
    for u, v, w in edges:
        b.add_edge(u, v, w)
    return b.freeze(connected_hint=connected_hint)


@pytest.fixture
def triangle():
    return build_graph(3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)])


@pytest.fixture
def path3():
    # 0 -5- 1 -7- 2
    return build_graph(3, [(0, 1, 5), (1, 2, 7)])
