"""Inequality systems, claim points and the synthesis certificate."""

from typing import List, Optional, Tuple

from pydantic import Field, model_validator

from .._types import BaseModel, Edge, Rational, canonical_edge
from .embedding import AnchorFaces, DistanceTable, RotationSystem
from .graph import IntegerWeighting, SimpleGraph

Triple = Tuple[int, int, int]


class InequalityRow(BaseModel):
    """d(w_1,F)x_1 + d(w_2,F)x_2 + d(w_3,F)x_3 >= d(F_base,F) for one face F."""

    face: int
    coefficients: Triple
    rhs: int
    # index i when this is the row of F_{w_i}
    gamma: Optional[int] = None

    def evaluate(self, point: Tuple[Rational, Rational, Rational]) -> Rational:
        return sum(c * x for c, x in zip(self.coefficients, point))


class InequalitySystem(BaseModel):
    """One row per face other than the base face, with the three gamma rows tagged."""

    side: str
    base_face: int
    side_faces: Triple
    rows: List[InequalityRow]

    @model_validator(mode="after")
    def _check_gamma(self) -> "InequalitySystem":
        if self.side not in ("u", "v"):
            raise ValueError(f"side must be 'u' or 'v', got {self.side!r}")
        tags = sorted(row.gamma for row in self.rows if row.gamma is not None)
        if tags != [0, 1, 2]:
            raise ValueError(f"expected gamma rows 0, 1, 2, got {tags}")
        for row in self.rows:
            for i, coeff in enumerate(row.coefficients):
                if row.gamma == i and coeff != 0:
                    raise ValueError(f"gamma row {i} has nonzero coefficient in column {i}")
                if row.gamma != i and coeff <= 0:
                    raise ValueError(f"row of face {row.face} has coefficient {coeff} in column {i}")
            if row.gamma is not None and row.rhs <= 0:
                raise ValueError(f"gamma row {row.gamma} has non-positive right-hand side")
        return self

    def gamma_row(self, i: int) -> InequalityRow:
        for row in self.rows:
            if row.gamma == i:
                return row
        raise KeyError(i)

    def row_for(self, face: int) -> InequalityRow:
        for row in self.rows:
            if row.face == face:
                return row
        raise KeyError(face)


class ClaimPoint(BaseModel):
    """Positive rational point of an inequality system with its tight faces."""

    side: str
    point: Tuple[Rational, Rational, Rational]
    tight_faces: Triple
    tight_positive: Tuple[bool, bool, bool]

    @model_validator(mode="after")
    def _check_positive(self) -> "ClaimPoint":
        if any(x <= 0 for x in self.point):
            raise ValueError(f"claim point must be positive, got {self.point}")
        return self


class SynthesisCertificate(BaseModel):
    """Everything needed to recheck a synthesized weighting omega."""

    graph: SimpleGraph
    uv: Edge
    rotation: RotationSystem
    anchors: AnchorFaces
    mu: IntegerWeighting
    mu_distances: DistanceTable
    u_claim: ClaimPoint
    v_claim: ClaimPoint
    M: int
    r: Triple
    s: Triple
    c: int
    omega: IntegerWeighting
    balance_round: int = 0
    notes: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_assembly(self) -> "SynthesisCertificate":
        u, v = self.uv
        omega = self.omega.weights
        if set(omega) != set(self.graph.edges):
            raise ValueError("omega does not cover exactly the edges of G")
        if omega[self.uv] != self.M:
            raise ValueError("omega(uv) must equal M")
        spokes = set()
        for centre, nbrs, values in ((u, self.anchors.u_neighbors, self.r), (v, self.anchors.v_neighbors, self.s)):
            for w, value in zip(nbrs, values):
                edge = canonical_edge(centre, w)
                spokes.add(edge)
                if omega[edge] != value:
                    raise ValueError(f"omega{edge} does not match its spoke weight")
        for edge, weight in self.mu.weights.items():
            if omega.get(edge) != self.c * weight:
                raise ValueError(f"omega{edge} must equal c * mu{edge}")
        if len(self.mu.weights) + len(spokes) + 1 != len(omega):
            raise ValueError("mu must cover exactly the core edges")
        return self

    @property
    def u(self) -> int:
        return self.uv[0]

    @property
    def v(self) -> int:
        return self.uv[1]

    @property
    def t(self) -> int:
        return self.omega.weights[self.uv]

    def spoke_edges(self, side: str) -> List[Edge]:
        centre = self.u if side == "u" else self.v
        return [canonical_edge(centre, w) for w in self.anchors.neighbors(side)]

    def core_edges(self) -> List[Edge]:
        return sorted(self.mu.weights)
