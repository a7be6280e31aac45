"""Exact rechecks of a synthesized weighting and criticality witnesses."""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import networkx as nx

from .._exceptions import (
    BalancednessViolatedError,
    CertificationFailedError,
    ClaimProofMismatchError,
    InternalInvariantError,
    MalformedDrawingError,
    MissingEdgeError,
)
from .._resource import BaseResource
from .._types import Edge, canonical_edge
from ..types.certificate import (
    BalanceCondition,
    CombinatorialDrawing,
    ConditionReport,
    CriticalityReport,
    DualWalk,
    EdgeWitness,
    FaceSlackCondition,
    LowerBoundReport,
    PairProductCondition,
    SpokeProductCondition,
    SpokeRoute,
    TightnessCondition,
)
from ..types.embedding import AnchorFaces, DistanceTable, DualGraph, FaceSet
from ..types.graph import IntegerWeighting
from ..types.synthesis import SynthesisCertificate
from .balance import verify_balanced_edges
from .embedding import all_pairs_distances, anchor_faces, dual_graph, dual_to_nx, faces, faces_at
from .graphs import core_graph

logger = logging.getLogger(__name__)

Witness = Tuple[CombinatorialDrawing, int, int]


class _Frame(NamedTuple):
    """Everything recomputed from a certificate's graph, rotation and omega."""

    fs: FaceSet
    dual: DualGraph
    anchors: AnchorFaces
    omega: Dict[Edge, int]
    table: DistanceTable
    h: nx.MultiGraph


# --- Helper Functions -------------------------------------------------------


def _terminal_neighbors(cert: SynthesisCertificate, x: int) -> List[int]:
    """Neighbours of a terminal in G - uv, ascending."""
    return sorted(b if a == x else a for a, b in cert.graph.edges if x in (a, b) and (a, b) != cert.uv)


def _frame(cert: SynthesisCertificate) -> _Frame:
    """Faces, dual and omega* distances, rebuilt without trusting mu or the claims."""
    core = core_graph(cert.graph, cert.uv)
    if cert.rotation.edges() != sorted(core.edges):
        raise InternalInvariantError("rotation system does not embed G_{u,v}")
    fs = faces(cert.rotation)
    dual = dual_graph(fs)
    anchors = anchor_faces(fs, _terminal_neighbors(cert, cert.u), _terminal_neighbors(cert, cert.v))
    omega = dict(cert.omega.weights)
    star = IntegerWeighting(weights={e: omega[e] for e in dual.edges})
    table = all_pairs_distances(dual, star, anchors)
    return _Frame(fs=fs, dual=dual, anchors=anchors, omega=omega, table=table, h=dual_to_nx(dual, omega))


def _weights_of(w: Union[IntegerWeighting, Mapping[Edge, int]]) -> Mapping[Edge, int]:
    return w.weights if isinstance(w, IntegerWeighting) else w


def _decrement(omega: Mapping[Edge, int], edge: Edge) -> Dict[Edge, int]:
    lowered = dict(omega)
    lowered[edge] -= 1
    return lowered


def _walk_from_path(h: nx.MultiGraph, path: Sequence[int]) -> DualWalk:
    """Dual walk along a face path, crossing the lightest parallel edge at each step."""
    edges = []
    for f, g in zip(path, path[1:]):
        parallel = h.get_edge_data(f, g)
        edges.append(min(parallel, key=lambda key: (parallel[key]["weight"], key)))
    return DualWalk(faces=list(path), edges=edges)


def _join(*walks: DualWalk, through: Sequence[Edge] = ()) -> DualWalk:
    """Concatenate walks; ``through[i]`` is crossed between walk i and walk i+1."""
    faces_out = list(walks[0].faces)
    edges_out = list(walks[0].edges)
    for crossing, walk in zip(through, walks[1:]):
        edges_out.append(crossing)
        faces_out.extend(walk.faces)
        edges_out.extend(walk.edges)
    return DualWalk(faces=faces_out, edges=edges_out)


def _pair_product(cert: SynthesisCertificate, frame: _Frame) -> PairProductCondition:
    core = sorted(((frame.omega[e], e) for e in frame.dual.edges))
    if len(core) < 2:
        raise InternalInvariantError("G_{u,v} needs at least two edges")
    (w1, e1), (w2, e2) = core[0], core[1]
    margin = w1 * w2 - frame.table.terminal_distance * frame.omega[cert.uv]
    return PairProductCondition(passed=margin > 0, margin=margin, pair=(e1, e2))


def _face_slack(cert: SynthesisCertificate, frame: _Frame, side: str) -> FaceSlackCondition:
    slacks = {face: _residue(cert, frame, side, face) for face in range(frame.table.face_count)}
    failing = [f for f, slack in slacks.items() if slack < 0]
    return FaceSlackCondition(side=side, passed=not failing, slacks=slacks, failing=failing)


def _side_cost(cert: SynthesisCertificate, frame: _Frame, side: str, face: int) -> int:
    centre = cert.u if side == "u" else cert.v
    return sum(
        frame.table.terminal(side, i, face) * frame.omega[canonical_edge(centre, w)]
        for i, w in enumerate(frame.anchors.neighbors(side))
    )


def _residue(cert: SynthesisCertificate, frame: _Frame, side: str, face: int) -> int:
    return _side_cost(cert, frame, side, face) - frame.omega[cert.uv] * frame.table.d(frame.anchors.base(side), face)


def _is_tight(cert: SynthesisCertificate, frame: _Frame, side: str, i: int, face: int) -> bool:
    return _residue(cert, frame, side, face) == 0 and frame.table.terminal(side, i, face) > 0


def _tight_face(cert: SynthesisCertificate, frame: _Frame, side: str, i: int) -> Optional[int]:
    """The declared tight face for neighbour i, else the first face that is tight for it."""
    claim = cert.u_claim if side == "u" else cert.v_claim
    declared = claim.tight_faces[i]
    if _is_tight(cert, frame, side, i, declared):
        return declared
    for face in range(frame.table.face_count):
        if _is_tight(cert, frame, side, i, face):
            logger.debug("%s-side face %d is tight for neighbour %d in place of %d", side, face, i + 1, declared)
            return face
    return None


def _tightness(cert: SynthesisCertificate, frame: _Frame, side: str) -> TightnessCondition:
    claim = cert.u_claim if side == "u" else cert.v_claim
    found = [_tight_face(cert, frame, side, i) for i in range(3)]
    chosen = tuple(f if f is not None else claim.tight_faces[i] for i, f in enumerate(found))
    return TightnessCondition(
        side=side,
        passed=all(f is not None for f in found),
        tight_faces=chosen,
        residues=tuple(_residue(cert, frame, side, face) for face in chosen),
        positive=tuple(frame.table.terminal(side, i, face) > 0 for i, face in enumerate(chosen)),
    )


def _spoke_product(cert: SynthesisCertificate, frame: _Frame) -> SpokeProductCondition:
    smallest = min(frame.omega[e] for e in frame.dual.edges)
    r = [frame.omega[e] for e in cert.spoke_edges("u")]
    s = [frame.omega[e] for e in cert.spoke_edges("v")]
    margins = [[Fraction(smallest, 9) - ri * sj for sj in s] for ri in r]
    return SpokeProductCondition(passed=all(m > 0 for row in margins for m in row), margins=margins)


def _route(h: nx.MultiGraph, source: int, target: int) -> DualWalk:
    return _walk_from_path(h, nx.dijkstra_path(h, source, target, weight="weight"))


def _spoke_routes(cert: SynthesisCertificate, frame: _Frame, side: str, host: int) -> List[SpokeRoute]:
    """Route each spoke of one side from ``host`` to the nearer face at its neighbour.

    The walk never crosses an edge incident with that neighbour.
    """
    centre = cert.u if side == "u" else cert.v
    base = frame.anchors.base(side)
    routes = []
    for i, w in enumerate(frame.anchors.neighbors(side)):
        spoke = canonical_edge(centre, w)
        if host == base:
            routes.append(SpokeRoute(spoke=spoke, neighbor=w, end_face=base, walk=DualWalk(faces=[base])))
            continue
        forbidden = [e for e in frame.dual.edges if w in e]
        h = dual_to_nx(frame.dual, frame.omega, forbidden=forbidden)
        targets = {base, frame.anchors.sides(side)[i]}
        dist, path = nx.multi_source_dijkstra(h, targets, target=host, weight="weight")
        if dist != frame.table.terminal(side, i, host):
            raise InternalInvariantError(f"route of {spoke} has length {dist}, expected d({w}, {host})")
        path = list(reversed(path))
        routes.append(SpokeRoute(spoke=spoke, neighbor=w, end_face=path[-1], walk=_walk_from_path(h, path)))
    return routes


def _recheck_tight(cert: SynthesisCertificate, frame: _Frame, side: str, i: int) -> int:
    face = _tight_face(cert, frame, side, i)
    if face is None:
        claim = cert.u_claim if side == "u" else cert.v_claim
        raise ClaimProofMismatchError(
            f"no {side}-side face is tight for neighbour {i + 1} under omega "
            f"(declared face {claim.tight_faces[i]})"
        )
    return face


def _edge_kind(cert: SynthesisCertificate, edge: Edge) -> str:
    if edge == cert.uv:
        return "uv"
    if cert.u in edge or cert.v in edge:
        return "spoke"
    return "core"


# --- Operations -------------------------------------------------------------


def check_conditions(cert: SynthesisCertificate) -> ConditionReport:
    """Recompute conditions 1 to 7 from omega alone, in exact arithmetic.

    Face distances are taken under omega restricted to G_{u,v}; mu and the
    stored distance table are not consulted.
    """
    frame = _frame(cert)
    balance = verify_balanced_edges(frame.dual.edges, frame.omega, frame.anchors.f_u, frame.anchors.f_v)
    report = ConditionReport(
        balanced=BalanceCondition(passed=balance.passed, distance=balance.distance, failing=balance.failing),
        pair_product=_pair_product(cert, frame),
        u_slack=_face_slack(cert, frame, "u"),
        u_tight=_tightness(cert, frame, "u"),
        v_slack=_face_slack(cert, frame, "v"),
        v_tight=_tightness(cert, frame, "v"),
        spoke_product=_spoke_product(cert, frame),
    )
    logger.info("conditions: %s", " ".join(f"{name}={'ok' if ok else 'FAIL'}" for name, ok in report.items()))
    return report


def count_crossings(d: CombinatorialDrawing, w: Union[IntegerWeighting, Mapping[Edge, int]]) -> int:
    """Weighted crossing count: a crossing of e and f costs w(e) w(f); weight 0 deletes an edge.

    Raises:
        MalformedDrawingError: a walk steps between faces its crossed edge does
            not separate, or a spoke walk crosses an edge at its own neighbour
    """
    weights = _weights_of(w)
    fs = faces(d.rotation)
    uv = canonical_edge(d.u, d.v)

    def checked(walk: DualWalk, label: str) -> List[Edge]:
        for f in walk.faces:
            if not 0 <= f < fs.face_count:
                raise MalformedDrawingError(f"{label} visits unknown face {f}")
        for step, edge in enumerate(walk.edges):
            edge = canonical_edge(*edge)
            if edge not in fs.edge_faces:
                raise MalformedDrawingError(f"{label} crosses {edge}, which is not an edge of G_{{u,v}}")
            if {walk.faces[step], walk.faces[step + 1]} != set(fs.edge_faces[edge]):
                raise MalformedDrawingError(f"{label} step {step} does not cross {edge}")
        return [canonical_edge(*e) for e in walk.edges]

    total = weights[uv] * sum(weights[e] for e in checked(d.route_uv, "uv route"))
    for route in d.spoke_routes:
        crossed = checked(route.walk, f"route of {route.spoke}")
        if route.neighbor not in route.spoke:
            raise MalformedDrawingError(f"spoke {route.spoke} does not end at {route.neighbor}")
        if route.end_face not in faces_at(fs, route.neighbor):
            raise MalformedDrawingError(f"route of {route.spoke} ends away from {route.neighbor}")
        if any(route.neighbor in e for e in crossed):
            raise MalformedDrawingError(f"route of {route.spoke} crosses an edge at {route.neighbor}")
        total += weights[canonical_edge(*route.spoke)] * sum(weights[e] for e in crossed)
    for e, f in d.spoke_cross:
        total += weights[canonical_edge(*e)] * weights[canonical_edge(*f)]
    return total


def upper_bound_drawing(cert: SynthesisCertificate) -> CombinatorialDrawing:
    """u in F_u, v in F_v, spokes uncrossed, uv along a shortest F_u-F_v dual path.

    Among shortest routes, one that avoids every edge at the six terminal
    neighbours is preferred.
    """
    frame = _frame(cert)
    f_u, f_v = frame.anchors.f_u, frame.anchors.f_v
    six = set(frame.anchors.u_neighbors) | set(frame.anchors.v_neighbors)
    avoid = dual_to_nx(frame.dual, frame.omega, forbidden=[e for e in frame.dual.edges if six & set(e)])
    try:
        length, path = nx.single_source_dijkstra(avoid, f_u, f_v, weight="weight")
    except nx.NetworkXNoPath:
        length, path = None, None
    if length == frame.table.terminal_distance:
        route = _walk_from_path(avoid, path)
    else:
        route = _route(frame.h, f_u, f_v)

    return CombinatorialDrawing(
        rotation=cert.rotation,
        u=cert.u,
        v=cert.v,
        face_u=f_u,
        face_v=f_v,
        spoke_routes=_spoke_routes(cert, frame, "u", f_u) + _spoke_routes(cert, frame, "v", f_v),
        route_uv=route,
    )


def witness_core_edge(cert: SynthesisCertificate, e: Edge) -> Witness:
    """Drawing that crosses e (or routes uv) once and counts exactly cr; lowering e drops below cr.

    Raises:
        BalancednessViolatedError: no shortest F_u-F_v dual path crosses e
        MissingEdgeError: e is a spoke or not an edge of G
    """
    e = canonical_edge(*e)
    if e == cert.uv:
        drawing = upper_bound_drawing(cert)
        return drawing, count_crossings(drawing, cert.omega), count_crossings(drawing, _decrement(cert.omega.weights, e))

    frame = _frame(cert)
    if e not in frame.dual.edges:
        raise MissingEdgeError(f"{e} is not an edge of G_{{u,v}}")
    f_u, f_v = frame.anchors.f_u, frame.anchors.f_v
    target = frame.table.terminal_distance
    for a, b in (frame.dual.edges[e], tuple(reversed(frame.dual.edges[e]))):
        if frame.table.d(f_u, a) + frame.omega[e] + frame.table.d(b, f_v) == target:
            route = _join(_route(frame.h, f_u, a), _route(frame.h, b, f_v), through=[e])
            break
    else:
        raise BalancednessViolatedError(f"no shortest F_u-F_v path crosses {e}")

    drawing = CombinatorialDrawing(
        rotation=cert.rotation,
        u=cert.u,
        v=cert.v,
        face_u=f_u,
        face_v=f_v,
        spoke_routes=_spoke_routes(cert, frame, "u", f_u) + _spoke_routes(cert, frame, "v", f_v),
        route_uv=route,
    )
    return drawing, count_crossings(drawing, cert.omega), count_crossings(drawing, _decrement(cert.omega.weights, e))


def witness_spoke_edge(cert: SynthesisCertificate, spoke: Edge) -> Witness:
    """Move one terminal into its tight face; count stays below cr + min core weight.

    For uu_i, u sits in U_i, the u-spokes run to the nearer face at their
    neighbour and uv runs U_i -> F_v, crossing every v-spoke once. Lowering
    omega(uu_i) by one saves at least d(u_i, U_i), which is a core weight.

    Raises:
        ClaimProofMismatchError: no face is tight for the spoke's neighbour under omega
        MissingEdgeError: ``spoke`` is not a spoke of G
    """
    spoke = canonical_edge(*spoke)
    if _edge_kind(cert, spoke) != "spoke" or spoke not in cert.omega.weights:
        raise MissingEdgeError(f"{spoke} is not a spoke of G")
    frame = _frame(cert)
    side = "u" if cert.u in spoke else "v"
    centre = cert.u if side == "u" else cert.v
    i = list(frame.anchors.neighbors(side)).index(spoke[0] if spoke[1] == centre else spoke[1])
    tight = _recheck_tight(cert, frame, side, i)

    f_u, f_v = frame.anchors.f_u, frame.anchors.f_v
    face_u, face_v = (tight, f_v) if side == "u" else (f_u, tight)
    spoke_cross = [(a, b) for a in cert.spoke_edges("u") for b in cert.spoke_edges("v")]
    drawing = CombinatorialDrawing(
        rotation=cert.rotation,
        u=cert.u,
        v=cert.v,
        face_u=face_u,
        face_v=face_v,
        spoke_routes=_spoke_routes(cert, frame, "u", face_u) + _spoke_routes(cert, frame, "v", face_v),
        route_uv=_route(frame.h, face_u, face_v),
        spoke_cross=spoke_cross,
    )
    return drawing, count_crossings(drawing, cert.omega), count_crossings(drawing, _decrement(cert.omega.weights, spoke))


def lower_bound_certificate(cert: SynthesisCertificate) -> LowerBoundReport:
    """Check the premises from which cr(G, omega) >= t * d(F_u, F_v) follows."""
    frame = _frame(cert)
    pair = _pair_product(cert, frame)
    u_slack = _face_slack(cert, frame, "u")
    v_slack = _face_slack(cert, frame, "v")

    f_u, f_v = frame.anchors.f_u, frame.anchors.f_v
    target = frame.table.terminal_distance
    d = frame.table.d
    n = frame.table.face_count
    failures = [
        (x, y) for x, y in itertools.product(range(n), repeat=2) if d(f_u, x) + d(x, y) + d(y, f_v) < target
    ]
    pillar_triangle = not failures and d(f_u, f_u) + d(f_u, f_v) + d(f_v, f_v) == target

    t = frame.omega[cert.uv]
    return LowerBoundReport(
        lower_bound=t * target,
        pair_product_margin=pair.margin,
        pair=pair.pair,
        pillar_pair_product=pair.passed,
        pillar_face_slack=u_slack.passed and v_slack.passed,
        failing_faces={"u": u_slack.failing, "v": v_slack.failing},
        triangle_pairs_checked=n * n,
        triangle_failures=failures,
        minimizing_pair=(f_u, f_v),
        pillar_triangle=pillar_triangle,
        statement=(
            f"cr(G, omega) >= {t} * {target} = {t * target}; an optimal drawing embeds G_{{u,v}} "
            "by the pair-product margin and pays at least t * d(F_u, F_v) for uv and the spokes"
        ),
        note=(
            "the embedding of G_{u,v} inside an optimal drawing is inferred from the verified premises, "
            "not found by search"
        ),
    )


def certify_critical(cert: SynthesisCertificate) -> CriticalityReport:
    """cr(G, omega) = t * d(F_u, F_v) with a strict-decrease witness for every edge.

    Raises:
        CertificationFailedError: a condition fails, the upper-bound drawing
            misses cr, or some witness does not drop below cr
    """
    conditions = check_conditions(cert)
    if not conditions.passed:
        raise CertificationFailedError(f"conditions {', '.join(conditions.failing)} fail")
    distance = conditions.balanced.distance
    cr_value = cert.t * distance

    upper = count_crossings(upper_bound_drawing(cert), cert.omega)
    if upper != cr_value:
        raise CertificationFailedError(f"upper-bound drawing has {upper} crossings, expected {cr_value}")

    smallest_core = min(cert.omega.weights[e] for e in cert.core_edges())
    witnesses = []
    for edge in cert.graph.edges:
        kind = _edge_kind(cert, edge)
        if kind == "spoke":
            drawing, count, lowered = witness_spoke_edge(cert, edge)
            if count >= cr_value + smallest_core:
                raise CertificationFailedError(f"witness for {edge} has {count} crossings, too many above {cr_value}")
        else:
            drawing, count, lowered = witness_core_edge(cert, edge)
            if count != cr_value:
                raise CertificationFailedError(f"witness for {edge} has {count} crossings, expected {cr_value}")
        strict = lowered < cr_value
        if not strict:
            raise CertificationFailedError(f"lowering {edge} leaves {lowered} >= {cr_value} crossings")
        witnesses.append(
            EdgeWitness(edge=edge, kind=kind, drawing=drawing, count=count, decremented_count=lowered, strict=strict)
        )

    logger.info("certified cr = %d digits over %d edges", len(str(cr_value)), len(witnesses))
    return CriticalityReport(cr_value=cr_value, t=cert.t, distance=distance, witnesses=witnesses)


# --- Resource ---------------------------------------------------------------


class CertifyResource(BaseResource):
    """Independent certification (``client.certify``)."""

    def conditions(self, cert: SynthesisCertificate) -> ConditionReport:
        return check_conditions(cert)

    def critical(self, cert: SynthesisCertificate, *, use_cache: bool = True) -> CriticalityReport:
        return self._cached(self._key("critical", cert), lambda: certify_critical(cert), use_cache=use_cache)

    def lower_bound(self, cert: SynthesisCertificate) -> LowerBoundReport:
        return lower_bound_certificate(cert)

    def upper_bound(self, cert: SynthesisCertificate) -> CombinatorialDrawing:
        return upper_bound_drawing(cert)

    def count(self, d: CombinatorialDrawing, w: Union[IntegerWeighting, Mapping[Edge, int]]) -> int:
        return count_crossings(d, w)
