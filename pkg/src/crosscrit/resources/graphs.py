"""Graph construction, hypothesis validation and multigraph/weighting conversion."""

from __future__ import annotations

import itertools
import logging
import random
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from .._exceptions import (
    DuplicateEdgeError,
    GraphError,
    IncompleteWeightingError,
    InvalidEdgeError,
    MissingEdgeError,
)
from .._resource import BaseResource
from .._types import Edge, canonical_edge
from ..types.graph import (
    HypothesisFailure,
    HypothesisReport,
    IntegerWeighting,
    Multigraph,
    SeparationWitness,
    SimpleGraph,
)

logger = logging.getLogger(__name__)


# --- Helper Functions -------------------------------------------------------


def to_nx(g: SimpleGraph) -> nx.Graph:
    """networkx view of a simple graph, nodes and edges in stored order."""
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def remove_edge(g: SimpleGraph, edge: Edge) -> SimpleGraph:
    """G - e."""
    edge = canonical_edge(*edge)
    return SimpleGraph(vertices=list(g.vertices), edges=[e for e in g.edges if e != edge])


def core_graph(g: SimpleGraph, uv: Edge) -> SimpleGraph:
    """G_{u,v}: G with both ends of uv and their incident edges removed."""
    gone = set(uv)
    return SimpleGraph(
        vertices=[x for x in g.vertices if x not in gone],
        edges=[e for e in g.edges if e[0] not in gone and e[1] not in gone],
    )


def underlying_simple_graph(m: Multigraph) -> SimpleGraph:
    """Drop multiplicities, keeping one copy of every adjacent pair."""
    return SimpleGraph(vertices=list(m.vertices), edges=sorted(m.multiplicities))


def seed_permutation(n: int, seed: int) -> List[int]:
    """Deterministic permutation of 0..n-1; ``order[old] = new``."""
    order = list(range(n))
    random.Random(seed).shuffle(order)
    return order


def invert_permutation(order: Sequence[int]) -> List[int]:
    inverse = [0] * len(order)
    for old, new in enumerate(order):
        inverse[new] = old
    return inverse


def relabel(g: SimpleGraph, order: Sequence[int]) -> SimpleGraph:
    """Rename vertex ``x`` to ``order[x]``; vertex ids must be 0..n-1."""
    if sorted(order) != sorted(g.vertices):
        raise GraphError("relabeling order is not a permutation of the vertex ids")
    return SimpleGraph(
        vertices=sorted(order[x] for x in g.vertices),
        edges=sorted(canonical_edge(order[a], order[b]) for a, b in g.edges),
    )


def relabel_weighting(w: IntegerWeighting, order: Sequence[int]) -> IntegerWeighting:
    """Move each weight to the relabeled edge ``(order[a], order[b])``."""
    moved = {canonical_edge(order[a], order[b]): x for (a, b), x in w.weights.items()}
    return IntegerWeighting(weights=dict(sorted(moved.items())))


def _order_two_separation(core: nx.Graph) -> Optional[SeparationWitness]:
    """First order-two separation with more than two edges on each side, if any.

    For every pair {a, b} the components of core - {a, b} are split between
    two sides; an edge ab may be placed on either side.
    """
    nodes = sorted(core.nodes)
    for a, b in itertools.combinations(nodes, 2):
        rest = core.subgraph(n for n in nodes if n not in (a, b))
        comps = sorted((sorted(c) for c in nx.connected_components(rest)), key=lambda c: c[0])
        if len(comps) < 2:
            continue
        counts = []
        for comp in comps:
            # Edges with at least one end inside the component
            counts.append(sum(1 for _ in core.edges(comp)))
        ab = 1 if core.has_edge(a, b) else 0
        last = len(comps) - 1
        # The last component always sits on side two, so each split is seen once
        for mask in range(1, 1 << last):
            one = [i for i in range(len(comps)) if mask >> i & 1]
            two = [i for i in range(len(comps)) if not mask >> i & 1]
            e_one = sum(counts[i] for i in one)
            e_two = sum(counts[i] for i in two)
            for extra_one in range(ab + 1):
                n_one = e_one + extra_one
                n_two = e_two + (ab - extra_one)
                if n_one >= 3 and n_two >= 3:
                    return SeparationWitness(
                        pair=(a, b),
                        side_one=sorted(x for i in one for x in comps[i]),
                        side_two=sorted(x for i in two for x in comps[i]),
                        edges_one=n_one,
                        edges_two=n_two,
                    )
    return None


def _node_cut(h: nx.Graph) -> List[int]:
    if h.number_of_nodes() < 2 or not nx.is_connected(h):
        return []
    try:
        return sorted(nx.minimum_node_cut(h))
    except nx.NetworkXError:
        # complete graphs have no node cut
        return []


def separation_edge_counts(g: SimpleGraph, witness: SeparationWitness) -> Tuple[int, int]:
    """Recount the edges owned by each side of a separation, ab excluded."""
    one = set(witness.side_one)
    two = set(witness.side_two)
    n_one = sum(1 for a, b in g.edges if a in one or b in one)
    n_two = sum(1 for a, b in g.edges if a in two or b in two)
    return n_one, n_two


# --- Operations -------------------------------------------------------------


def build_simple_graph(vertex_count: int, edge_pairs: Iterable[Sequence[int]]) -> SimpleGraph:
    """Normalized simple graph on vertices 0..vertex_count-1.

    Raises:
        InvalidEdgeError: loop edge, or an endpoint outside 0..vertex_count-1
        DuplicateEdgeError: the same unordered pair given twice
    """
    if vertex_count < 1:
        raise GraphError(f"vertex count must be positive, got {vertex_count}")
    seen = set()
    for pair in edge_pairs:
        a, b = int(pair[0]), int(pair[1])
        if a == b:
            raise InvalidEdgeError(f"loop edge ({a},{b})")
        if not (0 <= a < vertex_count and 0 <= b < vertex_count):
            raise InvalidEdgeError(f"edge ({a},{b}) references a vertex outside 0..{vertex_count - 1}")
        edge = canonical_edge(a, b)
        if edge in seen:
            raise DuplicateEdgeError(f"duplicate edge {edge}")
        seen.add(edge)
    return SimpleGraph(vertices=list(range(vertex_count)), edges=sorted(seen))


def validate_hypotheses(g: SimpleGraph, uv: Edge) -> HypothesisReport:
    """Check every hypothesis of the construction on (G, uv).

    G - uv must be cubic, 3-connected and planar, G nonplanar, G_{u,v}
    internally 3-connected, and the six terminal neighbours distinct.
    Failures are collected with witnesses rather than raised.

    Raises:
        MissingEdgeError: uv is not an edge of g
    """
    uv = canonical_edge(*uv)
    if uv not in set(g.edges):
        raise MissingEdgeError(f"designated edge {uv} is not an edge of the graph")
    u, v = uv
    failures: List[HypothesisFailure] = []

    h = to_nx(remove_edge(g, uv))

    odd = sorted(x for x, deg in h.degree if deg != 3)
    cubic = not odd
    if not cubic:
        failures.append(
            HypothesisFailure(
                name="g_minus_uv_cubic",
                message=f"G - uv has {len(odd)} vertices of degree other than 3",
                witness_vertices=odd,
            )
        )

    three_connected = h.number_of_nodes() >= 4 and nx.node_connectivity(h) >= 3
    if not three_connected:
        cut = _node_cut(h)
        failures.append(
            HypothesisFailure(
                name="g_minus_uv_3connected",
                message="G - uv is not 3-connected",
                witness_vertices=cut,
            )
        )

    planar, counterexample = nx.check_planarity(h, counterexample=True)
    if not planar:
        failures.append(
            HypothesisFailure(
                name="g_minus_uv_planar",
                message="G - uv is not planar",
                witness_edges=sorted(canonical_edge(a, b) for a, b in counterexample.edges),
            )
        )

    g_planar, _ = nx.check_planarity(to_nx(g))
    if g_planar:
        failures.append(HypothesisFailure(name="g_nonplanar", message="G is planar"))

    u_nbrs = sorted(h.neighbors(u))
    v_nbrs = sorted(h.neighbors(v))
    six = u_nbrs + v_nbrs
    distinct = len(u_nbrs) == 3 and len(v_nbrs) == 3 and len(set(six)) == 6
    if not distinct:
        failures.append(
            HypothesisFailure(
                name="neighbor_distinctness",
                message="terminal neighbours are not six distinct vertices",
                witness_vertices=sorted(set(x for x in six if six.count(x) > 1)),
            )
        )

    core = to_nx(core_graph(g, uv))
    internally = True
    if core.number_of_nodes() < 3 or not nx.is_biconnected(core):
        internally = False
        failures.append(
            HypothesisFailure(
                name="guv_internally_3connected",
                message="G_{u,v} is not 2-connected",
                witness_vertices=sorted(nx.articulation_points(core)),
            )
        )
    else:
        separation = _order_two_separation(core)
        if separation is not None:
            internally = False
            failures.append(
                HypothesisFailure(
                    name="guv_internally_3connected",
                    message=(
                        f"G_{{u,v}} has an order-two separation at {separation.pair} "
                        f"with {separation.edges_one} and {separation.edges_two} edges"
                    ),
                    separation=separation,
                )
            )

    report = HypothesisReport(
        uv=uv,
        is_simple=True,
        g_minus_uv_cubic=cubic,
        g_minus_uv_3connected=three_connected,
        g_minus_uv_planar=planar,
        g_nonplanar=not g_planar,
        guv_internally_3connected=internally,
        u_neighbors=u_nbrs,
        v_neighbors=v_nbrs,
        neighbor_distinctness=distinct,
        failures=failures,
    )
    logger.info(
        "hypotheses on uv=%s: %s",
        uv,
        "accepted" if report.accepted else "rejected (" + ", ".join(f.name for f in failures) + ")",
    )
    return report


def multigraph_to_weighted(m: Multigraph) -> Tuple[SimpleGraph, IntegerWeighting]:
    """Underlying simple graph plus the multiplicity weighting."""
    g = underlying_simple_graph(m)
    return g, IntegerWeighting(weights={e: m.multiplicities[e] for e in g.edges})


def weighted_to_multigraph(
    g: SimpleGraph, w: Union[IntegerWeighting, Mapping[Edge, int]]
) -> Multigraph:
    """Replace every edge e by w(e) parallel copies.

    Raises:
        IncompleteWeightingError: an edge has no weight or a weight below 1
    """
    weights = w.weights if isinstance(w, IntegerWeighting) else w
    multiplicities: Dict[Edge, int] = {}
    for edge in g.edges:
        if edge not in weights:
            raise IncompleteWeightingError(f"edge {edge} has no weight")
        if weights[edge] < 1:
            raise IncompleteWeightingError(f"edge {edge} has weight {weights[edge]}; weights must be >= 1")
        multiplicities[edge] = weights[edge]
    return Multigraph(vertices=list(g.vertices), multiplicities=multiplicities)


# --- Resource ---------------------------------------------------------------


class GraphsResource(BaseResource):
    """Graph construction and hypothesis checks (``client.graphs``)."""

    def build(self, vertex_count: int, edge_pairs: Iterable[Sequence[int]]) -> SimpleGraph:
        return build_simple_graph(vertex_count, edge_pairs)

    def validate(self, g: SimpleGraph, uv: Edge, *, use_cache: bool = True) -> HypothesisReport:
        """Hypothesis report for (g, uv), cached by graph content."""
        key = self._key("validate", g, canonical_edge(*uv))
        return self._cached(key, lambda: validate_hypotheses(g, uv), use_cache=use_cache)

    def to_weighted(self, m: Multigraph) -> Tuple[SimpleGraph, IntegerWeighting]:
        return multigraph_to_weighted(m)

    def to_multigraph(self, g: SimpleGraph, w: IntegerWeighting) -> Multigraph:
        return weighted_to_multigraph(g, w)
