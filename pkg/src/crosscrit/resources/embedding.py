"""Planar embedding, faces, dual graph, anchor faces and face distances."""

from __future__ import annotations

import logging
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

import networkx as nx

from .._exceptions import (
    AnchorAmbiguousError,
    CorruptRotationError,
    GNotNonplanarError,
    IncompleteWeightingError,
    InternalInvariantError,
    NotPlanarError,
    NotTwoConnectedError,
)
from .._resource import BaseResource
from .._types import Edge, canonical_edge
from ..types.embedding import AnchorFaces, DistanceTable, DualGraph, FaceSet, RotationSystem
from ..types.graph import IntegerWeighting, SimpleGraph
from .graphs import to_nx

logger = logging.getLogger(__name__)


# --- Helper Functions -------------------------------------------------------


def _rotate_to_min(cycle: Sequence[int]) -> List[int]:
    if not cycle:
        return []
    i = cycle.index(min(cycle))
    return list(cycle[i:]) + list(cycle[:i])


def _canonical_orientation(rotation: Dict[int, List[int]]) -> Dict[int, List[int]]:
    """Pick the mirror image with the smaller rotation at the first branch vertex."""
    mirrored = {v: list(reversed(nbrs)) for v, nbrs in rotation.items()}
    for v in sorted(rotation):
        if len(rotation[v]) >= 3:
            if _rotate_to_min(mirrored[v]) < _rotate_to_min(rotation[v]):
                return mirrored
            break
    return rotation


def face_vertices(fs: FaceSet, face: int) -> List[int]:
    """Boundary vertices of a face in traversal order."""
    return fs.face_vertices(face)


def faces_at(fs: FaceSet, vertex: int) -> List[int]:
    """Faces incident with a vertex, ascending."""
    return list(fs.vertex_faces.get(vertex, []))


def dual_to_nx(
    dual: DualGraph,
    weights: Mapping[Edge, int],
    forbidden: Iterable[Edge] = (),
) -> nx.MultiGraph:
    """networkx multigraph of the dual; each edge keyed by its primal edge."""
    skip = set(forbidden)
    h = nx.MultiGraph()
    h.add_nodes_from(dual.faces)
    for primal, (f, g) in dual.edges.items():
        if primal not in skip:
            h.add_edge(f, g, key=primal, weight=weights[primal])
    return h


def reverse_transfer(w_star: IntegerWeighting, dual: DualGraph) -> IntegerWeighting:
    """Primal weighting induced by a dual weighting, lambda(e) = lambda*(e*)."""
    return transfer_weights(w_star, dual)


# --- Operations -------------------------------------------------------------


def planar_embedding(g: SimpleGraph) -> RotationSystem:
    """Rotation system of the planar embedding, reflection fixed canonically.

    Raises:
        NotPlanarError: g has no planar embedding; the Kuratowski subgraph's
            edges are attached as ``witness``
    """
    planar, result = nx.check_planarity(to_nx(g), counterexample=True)
    if not planar:
        witness = sorted(canonical_edge(a, b) for a, b in result.edges)
        raise NotPlanarError(f"graph is not planar ({len(witness)}-edge Kuratowski subgraph)", witness)

    rotation = {v: list(nbrs) for v, nbrs in result.get_data().items()}
    for v in g.vertices:
        rotation.setdefault(v, [])
    rotation = _canonical_orientation({v: rotation[v] for v in sorted(rotation)})
    logger.debug("embedded %d vertices, %d edges", len(g.vertices), len(g.edges))
    return RotationSystem(rotation=rotation)


def faces(rs: RotationSystem) -> FaceSet:
    """Trace faces: the dart after (a, b) is (b, c) with c preceding a around b.

    Raises:
        CorruptRotationError: a trace does not close or Euler's formula fails
    """
    rot = rs.rotation
    position = {v: {w: i for i, w in enumerate(nbrs)} for v, nbrs in rot.items()}
    darts = sorted((a, b) for a, nbrs in rot.items() for b in nbrs)
    face_of: Dict[Tuple[int, int], int] = {}
    traced: List[List[Tuple[int, int]]] = []

    for start in darts:
        if start in face_of:
            continue
        face_id = len(traced)
        cycle = []
        dart = start
        while True:
            if dart in face_of:
                raise CorruptRotationError(f"dart {dart} lies on two face traces")
            face_of[dart] = face_id
            cycle.append(dart)
            a, b = dart
            nbrs = rot[b]
            dart = (b, nbrs[(position[b][a] - 1) % len(nbrs)])
            if dart == start:
                break
            if len(cycle) > len(darts):
                raise CorruptRotationError(f"face trace from {start} does not close")
        traced.append(cycle)

    n_vertices = sum(1 for nbrs in rot.values() if nbrs)
    euler = n_vertices - rs.edge_count + len(traced)
    if rs.edge_count and euler != 2:
        raise CorruptRotationError(f"Euler characteristic is {euler}, expected 2")

    vertex_faces: Dict[int, List[int]] = {v: [] for v in rot}
    for (a, _), f in face_of.items():
        if f not in vertex_faces[a]:
            vertex_faces[a].append(f)
    for fs_list in vertex_faces.values():
        fs_list.sort()

    edge_faces = {}
    for a, b in rs.edges():
        edge_faces[(a, b)] = (face_of[(a, b)], face_of[(b, a)])

    return FaceSet(faces=traced, vertex_faces=vertex_faces, edge_faces=edge_faces)


def dual_graph(fs: FaceSet) -> DualGraph:
    """One dual edge per primal edge joining its two faces; parallels kept.

    Raises:
        NotTwoConnectedError: an edge has the same face on both sides (a bridge)
    """
    edges: Dict[Edge, Tuple[int, int]] = {}
    for primal, (f, g) in sorted(fs.edge_faces.items()):
        if f == g:
            raise NotTwoConnectedError(f"edge {primal} is a bridge; its dual edge would be a loop")
        edges[primal] = (min(f, g), max(f, g))
    return DualGraph(faces=list(range(fs.face_count)), edges=edges)


def anchor_faces(fs: FaceSet, u_nbrs: Sequence[int], v_nbrs: Sequence[int]) -> AnchorFaces:
    """Locate F_u, F_v and the second face at each terminal neighbour.

    Raises:
        GNotNonplanarError: some face is incident with all six neighbours
        AnchorAmbiguousError: a neighbour triple has no unique common face,
            a neighbour is not on exactly two faces, or the F_{w_i} repeat
    """
    sides = {}
    for label, triple in (("u", tuple(u_nbrs)), ("v", tuple(v_nbrs))):
        if len(triple) != 3:
            raise AnchorAmbiguousError(f"{label}-side needs three neighbours, got {triple}")
        for w in triple:
            if len(faces_at(fs, w)) != 2:
                raise AnchorAmbiguousError(f"neighbour {w} is incident with {len(faces_at(fs, w))} faces, expected 2")
        common = set(faces_at(fs, triple[0]))
        for w in triple[1:]:
            common &= set(faces_at(fs, w))
        sides[label] = (triple, common)

    (u_triple, cu), (v_triple, cv) = sides["u"], sides["v"]
    shared = cu & cv
    if shared:
        raise GNotNonplanarError(
            f"face {min(shared)} is incident with all six terminal neighbours; uv embeds without crossings"
        )
    for label, common in (("u", cu), ("v", cv)):
        if len(common) != 1:
            raise AnchorAmbiguousError(f"{label}-side neighbours share {len(common)} faces, expected exactly 1")

    f_u, f_v = min(cu), min(cv)
    u_sides = tuple(next(f for f in faces_at(fs, w) if f != f_u) for w in u_triple)
    v_sides = tuple(next(f for f in faces_at(fs, w) if f != f_v) for w in v_triple)
    for label, found in (("u", u_sides), ("v", v_sides)):
        if len(set(found)) != 3:
            raise AnchorAmbiguousError(f"{label}-side second faces are not pairwise distinct: {found}")

    return AnchorFaces(
        f_u=f_u,
        f_v=f_v,
        u_neighbors=u_triple,
        v_neighbors=v_triple,
        f_u_sides=u_sides,
        f_v_sides=v_sides,
    )


def transfer_weights(
    w: Union[IntegerWeighting, Mapping[Edge, int]], dual: DualGraph
) -> IntegerWeighting:
    """lambda*(e*) = lambda(e); dual edges share their primal edge's key.

    Raises:
        IncompleteWeightingError: some primal edge of the dual has no weight
    """
    weights = w.weights if isinstance(w, IntegerWeighting) else w
    missing = [e for e in dual.edges if e not in weights]
    if missing:
        raise IncompleteWeightingError(f"{len(missing)} edges without weight, first {missing[0]}")
    return IntegerWeighting(weights={e: weights[e] for e in dual.edges})


def all_pairs_distances(
    dual: DualGraph, w_star: IntegerWeighting, anchors: AnchorFaces
) -> DistanceTable:
    """Exact all-pairs face distances, one Dijkstra per source face.

    Raises:
        InternalInvariantError: the dual is disconnected
    """
    h = dual_to_nx(dual, w_star.weights)
    n = len(dual.faces)
    distances: List[List[int]] = []
    for source in range(n):
        lengths = nx.single_source_dijkstra_path_length(h, source, weight="weight")
        if len(lengths) != n:
            raise InternalInvariantError(f"dual is disconnected: face {source} reaches {len(lengths)} of {n}")
        distances.append([lengths[f] for f in range(n)])

    def terminal_rows(base: int, side_faces: Sequence[int]) -> List[List[int]]:
        return [[min(distances[base][f], distances[side][f]) for f in range(n)] for side in side_faces]

    return DistanceTable(
        anchors=anchors,
        distances=distances,
        u_terminal=terminal_rows(anchors.f_u, anchors.f_u_sides),
        v_terminal=terminal_rows(anchors.f_v, anchors.f_v_sides),
    )


# --- Resource ---------------------------------------------------------------


class EmbeddingResource(BaseResource):
    """Embeddings, faces, duals and distances (``client.embedding``)."""

    def embed(self, g: SimpleGraph, *, use_cache: bool = True) -> RotationSystem:
        return self._cached(self._key("embed", g), lambda: planar_embedding(g), use_cache=use_cache)

    def faces(self, rs: RotationSystem, *, use_cache: bool = True) -> FaceSet:
        return self._cached(self._key("faces", rs), lambda: faces(rs), use_cache=use_cache)

    def dual(self, fs: FaceSet) -> DualGraph:
        return dual_graph(fs)

    def anchors(self, fs: FaceSet, u_nbrs: Sequence[int], v_nbrs: Sequence[int]) -> AnchorFaces:
        return anchor_faces(fs, u_nbrs, v_nbrs)

    def distances(
        self,
        dual: DualGraph,
        w_star: IntegerWeighting,
        anchors: AnchorFaces,
        *,
        use_cache: bool = True,
    ) -> DistanceTable:
        key = self._key("distances", dual, w_star, anchors)
        return self._cached(key, lambda: all_pairs_distances(dual, w_star, anchors), use_cache=use_cache)
