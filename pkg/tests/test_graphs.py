"""Tests for graph construction, hypothesis validation and weighting conversion."""

import random

import pytest

from crosscrit import CrossCrit
from crosscrit._exceptions import (
    DuplicateEdgeError,
    GraphError,
    IncompleteWeightingError,
    InvalidEdgeError,
    MissingEdgeError,
)
from crosscrit.resources.graphs import (
    build_simple_graph,
    core_graph,
    invert_permutation,
    multigraph_to_weighted,
    relabel,
    seed_permutation,
    separation_edge_counts,
    underlying_simple_graph,
    validate_hypotheses,
    weighted_to_multigraph,
)
from crosscrit.types.graph import IntegerWeighting, Multigraph


def _random_multigraph(rng):
    n = rng.randint(2, 8)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = rng.sample(pairs, rng.randint(1, len(pairs)))
    return Multigraph(vertices=list(range(n)), multiplicities={p: rng.randint(1, 5) for p in chosen})


class TestBuildSimpleGraph:
    """Test suite for graph normalization."""

    def test_edges_are_canonical_and_sorted(self):
        """Test that edges come back as sorted (min, max) pairs."""
        g = build_simple_graph(4, [(3, 2), (1, 0), (2, 0)])
        assert g.vertices == [0, 1, 2, 3]
        assert g.edges == [(0, 1), (0, 2), (2, 3)]

    def test_loop_rejected(self):
        """Test that a loop edge raises InvalidEdgeError."""
        with pytest.raises(InvalidEdgeError):
            build_simple_graph(3, [(1, 1)])

    def test_unknown_vertex_rejected(self):
        """Test that an out-of-range endpoint raises InvalidEdgeError."""
        with pytest.raises(InvalidEdgeError):
            build_simple_graph(3, [(0, 3)])

    def test_duplicate_rejected(self):
        """Test that the same unordered pair twice raises DuplicateEdgeError."""
        with pytest.raises(DuplicateEdgeError):
            build_simple_graph(3, [(0, 1), (1, 0)])

    def test_empty_vertex_set_rejected(self):
        """Test that a non-positive vertex count raises GraphError."""
        with pytest.raises(GraphError):
            build_simple_graph(0, [])


class TestValidateHypotheses:
    """Test suite for the hypothesis validator."""

    def test_dodecahedron_accepted(self, dodecahedron_instance):
        """Test that the dodecahedron plus an antipodal edge passes every hypothesis."""
        g, uv = dodecahedron_instance
        report = validate_hypotheses(g, uv)
        assert report.accepted
        assert report.failures == []
        assert len(report.u_neighbors) == 3
        assert len(report.v_neighbors) == 3
        assert not set(report.u_neighbors) & set(report.v_neighbors)

    def test_cube_rejected_with_separation(self, cube_plus_antipodal):
        """Test that the cube plus an antipodal edge fails internal 3-connectivity on C6."""
        g, uv = cube_plus_antipodal
        report = validate_hypotheses(g, uv)
        assert not report.accepted
        assert report.g_minus_uv_cubic
        assert report.g_minus_uv_3connected
        assert report.g_minus_uv_planar
        assert report.g_nonplanar
        assert report.neighbor_distinctness
        assert not report.guv_internally_3connected

        separation = report.failure("guv_internally_3connected").separation
        assert separation is not None
        assert (separation.edges_one, separation.edges_two) == (3, 3)
        assert len(separation.side_one) == 2
        assert len(separation.side_two) == 2
        # The split recounts to two 3-edge paths
        assert separation_edge_counts(core_graph(g, uv), separation) == (3, 3)

    def test_k4_rejected_as_planar(self, k4):
        """Test that K4 with one of its edges designated is rejected as planar."""
        report = validate_hypotheses(k4, (0, 1))
        assert not report.accepted
        assert report.failure("g_nonplanar") is not None
        assert report.failure("g_minus_uv_cubic") is not None
        assert not report.neighbor_distinctness

    def test_missing_edge(self, cube):
        """Test that a designated non-edge raises MissingEdgeError."""
        with pytest.raises(MissingEdgeError):
            validate_hypotheses(cube, (0, 7))

    def test_edge_order_does_not_matter(self, cube_plus_antipodal):
        """Test that uv is canonicalized."""
        g, _ = cube_plus_antipodal
        assert validate_hypotheses(g, (7, 0)).uv == (0, 7)

    def test_client_caches_reports(self, cube_plus_antipodal):
        """Test that the graphs namespace returns the cached report on a repeat call."""
        g, uv = cube_plus_antipodal
        client = CrossCrit()
        first = client.graphs.validate(g, uv)
        assert client.graphs.validate(g, uv) is first
        assert client.graphs.validate(g, uv, use_cache=False) is not first


class TestWeightingConversion:
    """Test suite for the multigraph <-> weighted graph equivalence."""

    def test_round_trip_identity(self):
        """Test that weighted -> multigraph undoes multigraph -> weighted on random inputs."""
        rng = random.Random(20240517)
        for _ in range(100):
            m = _random_multigraph(rng)
            g, w = multigraph_to_weighted(m)
            assert weighted_to_multigraph(g, w) == m
            assert sum(w.weights.values()) == m.edge_count

    def test_underlying_simple_graph(self):
        """Test that multiplicities are dropped."""
        m = Multigraph(vertices=[0, 1, 2], multiplicities={(0, 1): 3, (1, 2): 1})
        g = underlying_simple_graph(m)
        assert g.edges == [(0, 1), (1, 2)]

    def test_missing_weight(self, k4):
        """Test that an uncovered edge raises IncompleteWeightingError."""
        w = IntegerWeighting(weights={(0, 1): 2})
        with pytest.raises(IncompleteWeightingError):
            weighted_to_multigraph(k4, w)

    def test_zero_weight(self, k4):
        """Test that a zero weight raises IncompleteWeightingError."""
        weights = {e: 1 for e in k4.edges}
        weights[(0, 1)] = 0
        with pytest.raises(IncompleteWeightingError):
            weighted_to_multigraph(k4, weights)


class TestRelabel:
    """Test suite for seeded vertex relabeling."""

    def test_seed_permutation_is_deterministic(self):
        """Test that the same seed gives the same permutation."""
        assert seed_permutation(20, 7) == seed_permutation(20, 7)
        assert sorted(seed_permutation(20, 7)) == list(range(20))

    def test_relabel_and_back(self, cube):
        """Test that relabeling by the inverse permutation restores the graph."""
        order = seed_permutation(8, 3)
        moved = relabel(cube, order)
        assert len(moved.edges) == len(cube.edges)
        assert relabel(moved, invert_permutation(order)) == cube

    def test_relabel_rejects_non_permutation(self, cube):
        """Test that a bad order raises GraphError."""
        with pytest.raises(GraphError):
            relabel(cube, [0] * 8)
