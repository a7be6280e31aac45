"""Tests for harmonic positions and balanced weightings."""

import random
from fractions import Fraction

import networkx as nx
import pytest

from crosscrit import CrossCrit
from crosscrit._exceptions import BalanceFailedError, GraphError, InternalInvariantError
from crosscrit.resources.balance import (
    balanced_weights,
    harmonic_positions,
    pair_multiplicities,
    perturbation_step,
    solve_exact,
    source_potential,
    verify_balanced,
)
from crosscrit.resources.embedding import dual_graph, faces, planar_embedding
from crosscrit.resources.graphs import build_simple_graph, core_graph
from crosscrit.types.graph import Multigraph

# s=0, t=1, a=2, b=3
K4_REFERENCE = {(0, 2): 1, (1, 2): 2, (0, 3): 2, (1, 3): 1, (2, 3): 1, (0, 1): 3}


def _from_nx(graph):
    return Multigraph(
        vertices=sorted(graph.nodes),
        multiplicities={(min(a, b), max(a, b)): 1 for a, b in graph.edges},
    )


def _with_parallels(m, extra):
    counts = dict(m.multiplicities)
    for pair, k in extra.items():
        counts[pair] += k
    return Multigraph(vertices=m.vertices, multiplicities=counts)


def _corpus():
    """2-connected loopless multigraphs, several with parallel classes."""
    c5 = _from_nx(nx.cycle_graph(5))
    k4 = _from_nx(nx.complete_graph(4))
    theta = _from_nx(nx.Graph([(0, 2), (2, 1), (0, 3), (3, 4), (4, 1), (0, 1)]))
    cube = build_simple_graph(8, nx.circular_ladder_graph(4).edges)
    cube_dual = dual_graph(faces(planar_embedding(cube)))
    return [
        _from_nx(nx.cycle_graph(4)),
        k4,
        _from_nx(nx.circular_ladder_graph(4)),
        Multigraph(vertices=cube_dual.faces, multiplicities=cube_dual.pair_multiplicities()),
        Multigraph(vertices=[0, 1], multiplicities={(0, 1): 4}),
        _from_nx(nx.complete_graph(5)),
        _from_nx(nx.petersen_graph()),
        _from_nx(nx.wheel_graph(6)),
        _from_nx(nx.wheel_graph(8)),
        c5,
        _from_nx(nx.cycle_graph(7)),
        _from_nx(nx.circular_ladder_graph(3)),
        _from_nx(nx.circular_ladder_graph(5)),
        _from_nx(nx.ladder_graph(4)),
        _from_nx(nx.complete_bipartite_graph(3, 3)),
        _from_nx(nx.complete_bipartite_graph(2, 4)),
        _with_parallels(c5, {(0, 1): 2, (2, 3): 1}),
        _with_parallels(k4, {(0, 1): 2, (2, 3): 3}),
        _with_parallels(theta, {(0, 2): 1, (3, 4): 2}),
        Multigraph(vertices=[0, 1, 2], multiplicities={(0, 1): 2, (1, 2): 3, (0, 2): 1}),
        _from_nx(nx.icosahedral_graph()),
    ]


def _underlying(m):
    h = nx.Graph()
    h.add_nodes_from(m.vertices)
    h.add_edges_from(m.multiplicities)
    return h


def _oracle_failing(m, weights, s, t):
    """Edges on no minimum-weight simple s-t path, by exhaustive enumeration."""
    lengths = []
    for path in nx.all_simple_paths(_underlying(m), s, t):
        steps = [(min(a, b), max(a, b)) for a, b in zip(path, path[1:])]
        lengths.append((sum(weights[e] for e in steps), steps))
    best = min(length for length, _ in lengths)
    used = {e for length, steps in lengths if length == best for e in steps}
    return sorted(e for e in m.multiplicities if e not in used)


class TestExactSolve:
    """Test suite for the rational linear solver and perturbation step."""

    def test_two_by_two(self):
        """Test an exactly solvable system."""
        matrix = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
        assert solve_exact(matrix, [Fraction(3), Fraction(5)]) == [Fraction(4, 5), Fraction(7, 5)]

    def test_singular(self):
        """Test that a singular matrix raises InternalInvariantError."""
        matrix = [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]]
        with pytest.raises(InternalInvariantError):
            solve_exact(matrix, [Fraction(1), Fraction(2)])

    def test_perturbation_step(self):
        """Test that round k steps by 1 / (2^k n lcm)."""
        positions = {0: Fraction(0), 1: Fraction(1), 2: Fraction(1, 2), 3: Fraction(2, 3)}
        assert perturbation_step(1, 4, positions) == Fraction(1, 48)
        assert perturbation_step(3, 4, positions) == Fraction(1, 192)


class TestHarmonicPositions:
    """Test suite for rubber-band positions."""

    def test_path(self):
        """Test that the middle of a 3-vertex path sits at 1/2."""
        positions = harmonic_positions(_from_nx(nx.path_graph(3)), 0, 2)
        assert positions[1] == Fraction(1, 2)

    def test_k4_symmetric_pair(self, k4):
        """Test that in K4 both non-terminals sit at 1/2."""
        positions = harmonic_positions(k4, 0, 1)
        assert positions[2] == positions[3] == Fraction(1, 2)

    def test_mean_value_property(self, cube):
        """Test that each interior vertex is the multiplicity-weighted mean of its neighbours."""
        positions = harmonic_positions(cube, 0, 7)
        for v in cube.vertices:
            if v in (0, 7):
                continue
            nbrs = [w for e in cube.edges if v in e for w in e if w != v]
            assert positions[v] == sum(positions[w] for w in nbrs) / len(nbrs)
            assert 0 < positions[v] < 1

    def test_parallel_edges_pull_harder(self):
        """Test that a doubled edge counts twice in the mean."""
        m = Multigraph(vertices=[0, 1, 2], multiplicities={(0, 1): 2, (1, 2): 1})
        assert harmonic_positions(m, 0, 2)[1] == Fraction(1, 3)

    def test_equal_terminals_rejected(self, k4):
        """Test that s == t raises GraphError."""
        with pytest.raises(GraphError):
            harmonic_positions(k4, 1, 1)

    def test_source_potential(self, k4):
        """Test that the K4 source potential is 1 at the source and 1/3 at the free vertex."""
        rho = source_potential(k4, 0, 1, 2)
        assert rho == {0: 0, 1: 0, 2: 1, 3: Fraction(1, 3)}

    def test_source_must_be_free(self, k4):
        """Test that a terminal as source raises GraphError."""
        with pytest.raises(GraphError):
            source_potential(k4, 0, 1, 1)


class TestVerifyBalanced:
    """Test suite for the exact balancedness check."""

    def test_k4_reference_weighting(self, k4):
        """Test that the K4 reference weighting is balanced with D = 3."""
        report = verify_balanced(k4, K4_REFERENCE, 0, 1)
        assert report.passed
        assert report.distance == 3

    def test_k4_all_ones(self, k4):
        """Test that all-ones K4 fails on every edge except st."""
        report = verify_balanced(k4, {e: 1 for e in k4.edges}, 0, 1)
        assert report.distance == 1
        assert report.failing == [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

    def test_agrees_with_exhaustive_paths(self):
        """Test the shortest-path criterion against enumeration of all simple paths."""
        rng = random.Random(7)
        for m in _corpus():
            if len(m.vertices) > 10:
                continue
            for _ in range(3):
                s, t = rng.sample(m.vertices, 2)
                weights = {e: rng.randint(1, 6) for e in m.multiplicities}
                report = verify_balanced(m, weights, s, t)
                assert report.failing == _oracle_failing(m, weights, s, t)


class TestBalancedWeights:
    """Test suite for balanced weight synthesis."""

    def test_path(self):
        """Test that a path gets unit weights and D = 2."""
        cert = balanced_weights(_from_nx(nx.path_graph(3)), 0, 2)
        assert cert.weighting.weights == {(0, 1): 1, (1, 2): 1}
        assert cert.distance == 2

    def test_c4(self):
        """Test that C4 with opposite terminals gets all ones and D = 2."""
        cert = balanced_weights(_from_nx(nx.cycle_graph(4)), 0, 2)
        assert set(cert.weighting.weights.values()) == {1}
        assert cert.distance == 2
        assert cert.round == 0

    def test_k4_needs_perturbation(self, k4):
        """Test that K4 is solved after one source-potential perturbation."""
        cert = balanced_weights(k4, 0, 1)
        assert cert.round == 1
        assert verify_balanced(k4, cert.weighting, 0, 1).passed

    def test_k4_perturbed_weights(self, k4):
        """Test the exact K4 weights: vertex 2 moves by 1/16 and vertex 3 by 1/48 from 1/2."""
        cert = balanced_weights(k4, 0, 1)
        assert cert.distance == 48
        assert cert.weighting.weights == {
            (0, 1): 48,
            (0, 2): 27,
            (0, 3): 25,
            (1, 2): 21,
            (1, 3): 23,
            (2, 3): 2,
        }

    def test_k5_separates_free_vertices(self):
        """Test that perturbing K5 separates all three free vertices without touching the terminals."""
        k5 = _from_nx(nx.complete_graph(5))
        cert = balanced_weights(k5, 0, 1)
        assert cert.round >= 1
        assert all(w > 0 for w in cert.weighting.weights.values())
        assert cert.weighting[(0, 1)] == cert.distance

    def test_k4_without_perturbation_fails(self, k4):
        """Test that a zero round budget raises BalanceFailedError on K4."""
        with pytest.raises(BalanceFailedError):
            balanced_weights(k4, 0, 1, max_rounds=0)

    def test_corpus(self):
        """Test that every corpus graph gets a verified balanced weighting."""
        rng = random.Random(11)
        corpus = _corpus()
        assert len(corpus) >= 20
        for m in corpus:
            s, t = rng.sample(m.vertices, 2)
            cert = balanced_weights(m, s, t)
            report = verify_balanced(m, cert.weighting, s, t)
            assert report.passed
            assert report.distance == cert.distance
            assert set(cert.witnesses) == set(pair_multiplicities(m))
            if len(m.vertices) <= 10:
                assert _oracle_failing(m, cert.weighting.weights, s, t) == []

    def test_witnesses_are_monotone_shortest_paths(self, cube):
        """Test that each witness walks from s to t through its edge at length D."""
        cert = balanced_weights(cube, 0, 7)
        for edge, path in cert.witnesses.items():
            assert path[0] == 0 and path[-1] == 7
            steps = [(min(a, b), max(a, b)) for a, b in zip(path, path[1:])]
            assert edge in steps
            assert sum(cert.weighting[e] for e in steps) == cert.distance

    def test_dual_of_core(self, dodecahedron_instance):
        """Test the dual of G_{u,v} of the dodecahedron, the graph synthesis balances."""
        g, uv = dodecahedron_instance
        dual = dual_graph(faces(planar_embedding(core_graph(g, uv))))
        m = Multigraph(vertices=dual.faces, multiplicities=dual.pair_multiplicities())
        cert = balanced_weights(m, 0, len(dual.faces) - 1)
        assert verify_balanced(m, cert.weighting, 0, len(dual.faces) - 1).passed

    def test_client_uses_round_budget(self, k4):
        """Test that the client's max_perturb_rounds reaches balanced_weights."""
        client = CrossCrit(max_perturb_rounds=0)
        with pytest.raises(BalanceFailedError):
            client.balance.balanced(k4, 0, 1)
        client.max_perturb_rounds = 4
        first = client.balance.balanced(k4, 0, 1)
        assert client.balance.balanced(k4, 0, 1) is first
