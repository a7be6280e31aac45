"""Balanced weightings: every edge on a shortest path between two terminals."""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Dict, List, Mapping, Tuple, Union

import networkx as nx

from .._client import DEFAULT_MAX_PERTURB_ROUNDS
from .._exceptions import BalanceFailedError, GraphError, InternalInvariantError
from .._resource import BaseResource
from .._types import Edge
from ..types.balance import BalancedCertificate, BalanceReport, HarmonicPositions
from ..types.graph import IntegerWeighting, Multigraph, RationalWeighting, SimpleGraph

logger = logging.getLogger(__name__)

AnyGraph = Union[SimpleGraph, Multigraph]


# --- Helper Functions -------------------------------------------------------


def pair_multiplicities(g: AnyGraph) -> Dict[Edge, int]:
    """Multiplicity per adjacent pair (1 for every edge of a simple graph)."""
    if isinstance(g, Multigraph):
        return dict(sorted(g.multiplicities.items()))
    return {e: 1 for e in sorted(g.edges)}


def solve_exact(matrix: List[List[Fraction]], rhs: List[Fraction]) -> List[Fraction]:
    """Solve a square system over the rationals by Gaussian elimination.

    Raises:
        InternalInvariantError: the system is singular
    """
    n = len(matrix)
    m = [list(row) for row in matrix]
    b = list(rhs)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise InternalInvariantError(f"singular system: no pivot in column {col}")
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            b[col], b[pivot] = b[pivot], b[col]
        fp = m[col][col]
        for r in range(col + 1, n):
            fr = m[r][col]
            if fr == 0:
                continue
            frp = fr / fp
            for c in range(col, n):
                m[r][c] -= m[col][c] * frp
            b[r] -= b[col] * frp

    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = b[r] - sum(m[r][c] * x[c] for c in range(r + 1, n))
        x[r] = acc / m[r][r]
    return x


def _neighbors(multiplicities: Mapping[Edge, int]) -> Dict[int, List[int]]:
    adj: Dict[int, List[int]] = {}
    for a, b in multiplicities:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    for nbrs in adj.values():
        nbrs.sort()
    return adj


def _monotone_walk(
    start: int, goal: int, positions: Mapping[int, Fraction], adj: Mapping[int, List[int]], down: bool
) -> List[int]:
    """Follow strictly decreasing (or increasing) positions from start to goal."""
    path = [start]
    x = start
    while x != goal:
        if down:
            step = next((y for y in adj[x] if positions[y] < positions[x]), None)
        else:
            step = next((y for y in adj[x] if positions[y] > positions[x]), None)
        if step is None:
            raise InternalInvariantError(f"vertex {x} has no strictly {'lower' if down else 'higher'} neighbour")
        path.append(step)
        x = step
    return path


def witness_paths(
    multiplicities: Mapping[Edge, int], positions: HarmonicPositions
) -> Dict[Edge, List[int]]:
    """s-t path through each pair, monotone in position."""
    adj = _neighbors(multiplicities)
    x = positions.positions
    witnesses = {}
    for a, b in multiplicities:
        low, high = (a, b) if x[a] < x[b] else (b, a)
        down = _monotone_walk(low, positions.s, x, adj, down=True)
        up = _monotone_walk(high, positions.t, x, adj, down=False)
        witnesses[(a, b)] = list(reversed(down)) + up
    return witnesses


def _harmonic_solve(
    mult: Mapping[Edge, int], vertices: List[int], pinned: Mapping[int, Fraction]
) -> Dict[int, Fraction]:
    """Multiplicity-weighted mean solution with the ``pinned`` vertices held fixed.

    Raises:
        InternalInvariantError: the Laplacian system is singular (a free vertex cannot reach a pin)
    """
    inner = [x for x in sorted(vertices) if x not in pinned]
    index = {x: i for i, x in enumerate(inner)}
    n = len(inner)
    matrix = [[Fraction(0)] * n for _ in range(n)]
    rhs = [Fraction(0)] * n

    for (a, b), count in mult.items():
        for x, y in ((a, b), (b, a)):
            if x not in index:
                continue
            row = index[x]
            matrix[row][row] += count
            if y in index:
                matrix[row][index[y]] -= count
            else:
                rhs[row] += count * pinned[y]

    solution = solve_exact(matrix, rhs) if n else []
    values = dict(pinned)
    values.update({x: solution[index[x]] for x in inner})
    return dict(sorted(values.items()))


def _check_terminals(g: AnyGraph, s: int, t: int) -> None:
    if s == t:
        raise GraphError("terminals must be distinct")
    if s not in g.vertices or t not in g.vertices:
        raise GraphError(f"terminals {s}, {t} must be vertices of the graph")


def _pick_source(
    coincident: List[Edge], positions: Mapping[int, Fraction], adj: Mapping[int, List[int]]
) -> int:
    """Smallest vertex of a coincident pair with a neighbour at another position."""
    ends = sorted({v for pair in coincident for v in pair})
    for v in ends:
        if any(positions[w] != positions[v] for w in adj[v]):
            return v
    raise InternalInvariantError(f"coincident vertices {ends} are cut off from the terminals")


def perturbation_step(round_no: int, n: int, positions: Mapping[int, Fraction]) -> Fraction:
    """Step of round k: 1 / (2^k n L), L the lcm of the current denominators."""
    lcm = math.lcm(*(x.denominator for x in positions.values()))
    return Fraction(1, (2**round_no) * n * lcm)


# --- Operations -------------------------------------------------------------


def harmonic_positions(g: AnyGraph, s: int, t: int) -> HarmonicPositions:
    """Pin s at 0 and t at 1; every other vertex sits at the weighted mean of its neighbours.

    Each adjacent pair pulls with its multiplicity.

    Raises:
        GraphError: s == t, or a terminal is not a vertex
        InternalInvariantError: the Laplacian system is singular (g disconnected)
    """
    _check_terminals(g, s, t)
    pinned = {s: Fraction(0), t: Fraction(1)}
    positions = _harmonic_solve(pair_multiplicities(g), list(g.vertices), pinned)
    return HarmonicPositions(s=s, t=t, positions=positions)


def source_potential(g: AnyGraph, s: int, t: int, p: int) -> Dict[int, Fraction]:
    """Harmonic function that is 0 at both terminals and 1 at the source ``p``.

    Raises:
        GraphError: p is a terminal or not a vertex
    """
    _check_terminals(g, s, t)
    if p in (s, t) or p not in g.vertices:
        raise GraphError(f"source {p} must be a non-terminal vertex")
    pinned = {s: Fraction(0), t: Fraction(0), p: Fraction(1)}
    return _harmonic_solve(pair_multiplicities(g), list(g.vertices), pinned)


def verify_balanced_edges(
    keyed_edges: Mapping[Edge, Tuple[int, int]],
    weights: Mapping[Edge, int],
    s: int,
    t: int,
) -> BalanceReport:
    """Balancedness of a keyed multigraph: edge key -> endpoints.

    An edge ab passes iff min(d(s,a) + w + d(b,t), d(s,b) + w + d(a,t)) = d(s,t).
    """
    h = nx.MultiGraph()
    h.add_nodes_from((s, t))
    for key, (a, b) in keyed_edges.items():
        h.add_edge(a, b, key=key, weight=weights[key])
    from_s = nx.single_source_dijkstra_path_length(h, s, weight="weight")
    from_t = nx.single_source_dijkstra_path_length(h, t, weight="weight")
    if t not in from_s:
        return BalanceReport(s=s, t=t, distance=0, failing=sorted(keyed_edges))

    distance = from_s[t]
    failing = []
    for key, (a, b) in keyed_edges.items():
        w = weights[key]
        if a not in from_s or b not in from_s:
            failing.append(key)
            continue
        through = min(from_s[a] + w + from_t[b], from_s[b] + w + from_t[a])
        if through != distance:
            failing.append(key)
    return BalanceReport(s=s, t=t, distance=distance, failing=sorted(failing))


def verify_balanced(
    g: AnyGraph, w: Union[IntegerWeighting, Mapping[Edge, int]], s: int, t: int
) -> BalanceReport:
    """Exact balancedness check of g under w with terminals s and t."""
    weights = w.weights if isinstance(w, IntegerWeighting) else w
    keyed = {pair: pair for pair in pair_multiplicities(g)}
    return verify_balanced_edges(keyed, weights, s, t)


def balanced_weights(
    g: AnyGraph,
    s: int,
    t: int,
    *,
    max_rounds: int = DEFAULT_MAX_PERTURB_ROUNDS,
) -> BalancedCertificate:
    """Positive integer weighting under which every edge lies on a shortest s-t path.

    Round 0 uses plain rubber bands. While adjacent vertices coincide, round
    k picks a vertex p of a coincident pair (see :func:`_pick_source`) and
    moves every vertex by ``perturbation_step`` times its
    :func:`source_potential` for p. Open gaps exceed the step, so they stay
    open, and p leaves its coincident neighbours behind. A round is accepted
    once no adjacent pair coincides and the scaled lengths pass
    :func:`verify_balanced`.

    Raises:
        BalanceFailedError: adjacent vertices still coincide after ``max_rounds`` rounds
    """
    mult = pair_multiplicities(g)
    pairs = list(mult)
    adj = _neighbors(mult)
    n = len(g.vertices)
    positions = harmonic_positions(g, s, t)

    for round_no in range(max_rounds + 1):
        x = positions.positions
        coincident = [(a, b) for a, b in pairs if x[a] == x[b]]
        if not coincident:
            break
        logger.debug("round %d: %d adjacent pairs coincide", round_no, len(coincident))
        if round_no == max_rounds:
            raise BalanceFailedError(f"no balanced weighting within {max_rounds} perturbation rounds")
        p = _pick_source(coincident, x, adj)
        step = perturbation_step(round_no + 1, n, x)
        rho = source_potential(g, s, t, p)
        moved = {v: x[v] + step * rho[v] for v in x}
        positions = HarmonicPositions(s=s, t=t, positions=moved, round=round_no + 1)

    lengths = RationalWeighting(weights={(a, b): abs(x[a] - x[b]) for a, b in pairs})
    scale = math.lcm(*(q.denominator for q in x.values()))
    weights = {e: int(length * scale) for e, length in lengths.weights.items()}
    report = verify_balanced(g, weights, s, t)
    if not report.passed:
        raise InternalInvariantError(f"separated positions leave edges {report.failing} unbalanced")
    if report.distance != scale:
        raise InternalInvariantError(f"terminal distance {report.distance} differs from scale {scale}")

    logger.info("balanced weighting found in round %d, D=%d", positions.round, scale)
    return BalancedCertificate(
        s=s,
        t=t,
        weighting=IntegerWeighting(weights=weights),
        distance=scale,
        witnesses=witness_paths(mult, positions),
        round=positions.round,
    )


# --- Resource ---------------------------------------------------------------


class BalanceResource(BaseResource):
    """Harmonic positions and balanced weightings (``client.balance``)."""

    def positions(self, g: AnyGraph, s: int, t: int) -> HarmonicPositions:
        return harmonic_positions(g, s, t)

    def balanced(self, g: AnyGraph, s: int, t: int, *, use_cache: bool = True) -> BalancedCertificate:
        rounds = self._client.max_perturb_rounds
        key = self._key("balanced", g, s, t, rounds)
        return self._cached(
            key, lambda: balanced_weights(g, s, t, max_rounds=rounds), use_cache=use_cache
        )

    def verify(self, g: AnyGraph, w: IntegerWeighting, s: int, t: int) -> BalanceReport:
        return verify_balanced(g, w, s, t)
