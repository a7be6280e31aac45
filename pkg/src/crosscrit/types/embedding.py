"""Embedding, face, dual and distance models."""

from typing import Dict, List, Tuple

from pydantic import Field, model_validator

from .._types import BaseModel, Edge

Dart = Tuple[int, int]


class RotationSystem(BaseModel):
    """Clockwise cyclic order of neighbours at every vertex."""

    rotation: Dict[int, List[int]]

    @model_validator(mode="after")
    def _check_darts(self) -> "RotationSystem":
        for v, nbrs in self.rotation.items():
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"vertex {v} lists a neighbour twice")
            for w in nbrs:
                if w == v:
                    raise ValueError(f"loop at vertex {v}")
                if v not in self.rotation.get(w, ()):
                    raise ValueError(f"dart ({v},{w}) has no reverse dart")
        return self

    @property
    def vertex_count(self) -> int:
        return len(self.rotation)

    @property
    def edge_count(self) -> int:
        return sum(len(n) for n in self.rotation.values()) // 2

    def edges(self) -> List[Edge]:
        return sorted({(min(v, w), max(v, w)) for v, nbrs in self.rotation.items() for w in nbrs})


class FaceSet(BaseModel):
    """Faces as dart cycles, with vertex and edge incidence indices."""

    faces: List[List[Dart]]
    vertex_faces: Dict[int, List[int]]
    # (a, b) with a < b -> (face of dart a->b, face of dart b->a)
    edge_faces: Dict[Edge, Tuple[int, int]]

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def face_vertices(self, face: int) -> List[int]:
        return [dart[0] for dart in self.faces[face]]


class DualGraph(BaseModel):
    """Dual multigraph; each dual edge is keyed by the primal edge it crosses."""

    faces: List[int]
    edges: Dict[Edge, Tuple[int, int]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_loopless(self) -> "DualGraph":
        known = set(self.faces)
        for primal, (f, g) in self.edges.items():
            if f == g:
                raise ValueError(f"dual edge of {primal} is a loop at face {f}")
            if f > g:
                raise ValueError(f"dual edge of {primal} has non-canonical ends ({f},{g})")
            if f not in known or g not in known:
                raise ValueError(f"dual edge of {primal} references an unknown face")
        return self

    def pair_multiplicities(self) -> Dict[Edge, int]:
        """Parallel-class sizes keyed by face pair."""
        counts: Dict[Edge, int] = {}
        for pair in self.edges.values():
            counts[pair] = counts.get(pair, 0) + 1
        return counts


class AnchorFaces(BaseModel):
    """F_u, F_v and the second faces F_{u_i}, F_{v_i} at the terminal neighbours."""

    f_u: int
    f_v: int
    u_neighbors: Tuple[int, int, int]
    v_neighbors: Tuple[int, int, int]
    f_u_sides: Tuple[int, int, int]
    f_v_sides: Tuple[int, int, int]

    @model_validator(mode="after")
    def _check_anchors(self) -> "AnchorFaces":
        if self.f_u == self.f_v:
            raise ValueError("F_u and F_v coincide")
        for base, sides, label in (
            (self.f_u, self.f_u_sides, "u"),
            (self.f_v, self.f_v_sides, "v"),
        ):
            if len(set(sides)) != 3:
                raise ValueError(f"F_{label}_i faces are not pairwise distinct: {sides}")
            if base in sides:
                raise ValueError(f"F_{label} equals one of its F_{label}_i faces")
        return self

    def base(self, side: str) -> int:
        return self.f_u if side == "u" else self.f_v

    def sides(self, side: str) -> Tuple[int, int, int]:
        return self.f_u_sides if side == "u" else self.f_v_sides

    def neighbors(self, side: str) -> Tuple[int, int, int]:
        return self.u_neighbors if side == "u" else self.v_neighbors


class DistanceTable(BaseModel):
    """All-pairs face distances plus terminal distances d(u_i, F), d(v_i, F)."""

    anchors: AnchorFaces
    distances: List[List[int]]
    u_terminal: List[List[int]]
    v_terminal: List[List[int]]

    @model_validator(mode="after")
    def _check_shape(self) -> "DistanceTable":
        n = len(self.distances)
        if any(len(row) != n for row in self.distances):
            raise ValueError("distance matrix is not square")
        for rows in (self.u_terminal, self.v_terminal):
            if len(rows) != 3 or any(len(row) != n for row in rows):
                raise ValueError("terminal distances must be 3 rows of face length")
        return self

    @property
    def face_count(self) -> int:
        return len(self.distances)

    def d(self, f: int, g: int) -> int:
        return self.distances[f][g]

    def terminal(self, side: str, i: int, face: int) -> int:
        rows = self.u_terminal if side == "u" else self.v_terminal
        return rows[i][face]

    @property
    def terminal_distance(self) -> int:
        """d(F_u, F_v)."""
        return self.distances[self.anchors.f_u][self.anchors.f_v]
