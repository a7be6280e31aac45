"""Shared graph instances and a synthesized certificate."""

import networkx as nx
import pytest

from crosscrit.resources.graphs import build_simple_graph
from crosscrit.resources.synthesis import synthesize

# Cube on 0..7, vertices adjacent when they differ in one bit; 0 and 7 antipodal
CUBE_EDGES = [(a, a | bit) for a in range(8) for bit in (1, 2, 4) if not a & bit]

# Two branch vertices 0 and 1 joined by paths of length 4, 3 and 2
THETA_EDGES = [(0, 2), (2, 3), (3, 4), (4, 1), (0, 5), (5, 6), (6, 1), (0, 7), (7, 1)]


def dodecahedron_with_antipodal_edge(u=0):
    """Dodecahedron plus the edge from u to its unique antipode."""
    dodeca = nx.dodecahedral_graph()
    lengths = nx.single_source_shortest_path_length(dodeca, u)
    v = next(x for x, d in lengths.items() if d == 5)
    g = build_simple_graph(20, list(dodeca.edges) + [(u, v)])
    return g, (min(u, v), max(u, v))


@pytest.fixture
def k4():
    return build_simple_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def cube():
    return build_simple_graph(8, CUBE_EDGES)


@pytest.fixture
def cube_plus_antipodal():
    return build_simple_graph(8, CUBE_EDGES + [(0, 7)]), (0, 7)


@pytest.fixture
def theta():
    return build_simple_graph(8, THETA_EDGES)


@pytest.fixture(scope="session")
def dodecahedron_instance():
    return dodecahedron_with_antipodal_edge()


@pytest.fixture(scope="session")
def certificate(dodecahedron_instance):
    g, uv = dodecahedron_instance
    return synthesize(g, uv)
