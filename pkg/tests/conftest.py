from pathlib import Path

import networkx as nx
import pytest

from fcsg_minors.graph import SimpleGraph

CORPUS = Path(__file__).parent / "corpus"


def graph(nx_graph):
    return SimpleGraph.from_networkx(nx_graph)


def complete(n):
    return graph(nx.complete_graph(n))


def cycle(n):
    return graph(nx.cycle_graph(n))


def path(n):
    return graph(nx.path_graph(n))


def star(leaves):
    return graph(nx.star_graph(leaves))


def atlas(max_vertices):
    """Every graph of the networkx atlas with at most max_vertices vertices."""
    return [graph(g) for g in nx.graph_atlas_g() if g.number_of_nodes() <= max_vertices]


@pytest.fixture
def corpus():
    return CORPUS


@pytest.fixture
def petersen():
    return graph(nx.petersen_graph())
