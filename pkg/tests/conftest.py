import random

import networkx as nx
import pytest

from degstar import kernels
from degstar.graph import Graph


def from_nx(G) -> Graph:
    G = nx.convert_node_labels_to_integers(G)
    return Graph.from_edges(G.number_of_nodes(), G.edges())


def atlas(max_n: int, connected: bool = True) -> list[Graph]:
    out = []
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_nodes() > max_n:
            break
        if connected and not nx.is_connected(G):
            continue
        out.append(from_nx(G))
    return out


@pytest.fixture(scope="session")
def small_connected():
    """Every connected graph on at most six vertices."""
    return atlas(6)


@pytest.fixture(scope="session")
def six_vertex_connected(small_connected):
    return [g for g in small_connected if g.n == 6]


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    return kernels.BACKENDS[request.param]


@pytest.fixture
def rng():
    return random.Random(20240611)
