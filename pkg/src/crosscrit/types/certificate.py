"""Condition reports, combinatorial drawings and criticality reports."""

from typing import Dict, List, Optional, Tuple

from pydantic import Field, model_validator

from .._types import BaseModel, Edge, Rational
from .embedding import RotationSystem

Triple = Tuple[int, int, int]


class DualWalk(BaseModel):
    """Faces visited by a routed edge and the primal edges it crosses between them."""

    faces: List[int]
    edges: List[Edge] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_lengths(self) -> "DualWalk":
        if not self.faces:
            raise ValueError("a dual walk visits at least one face")
        if len(self.edges) != len(self.faces) - 1:
            raise ValueError("a dual walk crosses one edge per step")
        return self

    @property
    def start(self) -> int:
        return self.faces[0]

    @property
    def end(self) -> int:
        return self.faces[-1]


class SpokeRoute(BaseModel):
    """Routing of one spoke from its terminal's host face to a face at the neighbour."""

    spoke: Edge
    neighbor: int
    end_face: int
    walk: DualWalk


class CombinatorialDrawing(BaseModel):
    """G drawn as the embedding of G_{u,v} plus dual-walk routings of uv and the spokes."""

    rotation: RotationSystem
    u: int
    v: int
    face_u: int
    face_v: int
    spoke_routes: List[SpokeRoute]
    route_uv: DualWalk
    spoke_cross: List[Tuple[Edge, Edge]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_hosts(self) -> "CombinatorialDrawing":
        if self.route_uv.start != self.face_u or self.route_uv.end != self.face_v:
            raise ValueError("uv must be routed from the face of u to the face of v")
        for route in self.spoke_routes:
            host = self.face_u if self.u in route.spoke else self.face_v
            if route.walk.start != host or route.walk.end != route.end_face:
                raise ValueError(f"route of spoke {route.spoke} has wrong ends")
        return self


# --- Conditions --------------------------------------------------------------


class BalanceCondition(BaseModel):
    """Every dual edge lies on a shortest F_uF_v path under omega*."""

    passed: bool
    distance: int
    failing: List[Edge] = Field(default_factory=list)


class PairProductCondition(BaseModel):
    """omega(e)omega(e') > d(F_u,F_v) * omega(uv) for all pairs of core edges."""

    passed: bool
    margin: int
    pair: Tuple[Edge, Edge]


class FaceSlackCondition(BaseModel):
    """Weighted spoke distances dominate t * d(F_base, F) at every face."""

    side: str
    passed: bool
    slacks: Dict[int, int]
    failing: List[int] = Field(default_factory=list)


class TightnessCondition(BaseModel):
    """Tight faces U_i (or V_i) with their equality residues."""

    side: str
    passed: bool
    tight_faces: Triple
    residues: Triple
    positive: Tuple[bool, bool, bool]


class SpokeProductCondition(BaseModel):
    """(1/9) min core weight - omega(uu_i)omega(vv_j) for every (i, j)."""

    passed: bool
    margins: List[List[Rational]]


class ConditionReport(BaseModel):
    """Exact evaluation of the seven conditions that make omega crossing-critical."""

    balanced: BalanceCondition
    pair_product: PairProductCondition
    u_slack: FaceSlackCondition
    u_tight: TightnessCondition
    v_slack: FaceSlackCondition
    v_tight: TightnessCondition
    spoke_product: SpokeProductCondition

    def items(self) -> List[Tuple[str, bool]]:
        """Conditions numbered 1 to 7 with their verdicts."""
        return [
            ("1", self.balanced.passed),
            ("2", self.pair_product.passed),
            ("3", self.u_slack.passed),
            ("4", self.u_tight.passed),
            ("5", self.v_slack.passed),
            ("6", self.v_tight.passed),
            ("7", self.spoke_product.passed),
        ]

    @property
    def failing(self) -> List[str]:
        return [name for name, ok in self.items() if not ok]

    @property
    def passed(self) -> bool:
        return not self.failing


# --- Criticality -------------------------------------------------------------


class EdgeWitness(BaseModel):
    """Drawing whose crossing count drops below cr once the edge weight drops by one."""

    edge: Edge
    kind: str
    drawing: CombinatorialDrawing
    count: int
    decremented_count: int
    strict: bool


class CriticalityReport(BaseModel):
    """cr(G, omega) = t * d(F_u, F_v) and one strict-decrease witness per edge."""

    cr_value: int
    t: int
    distance: int
    witnesses: List[EdgeWitness]

    @property
    def all_strict(self) -> bool:
        return all(w.strict for w in self.witnesses)

    def witness(self, edge: Edge) -> EdgeWitness:
        for w in self.witnesses:
            if w.edge == edge:
                return w
        raise KeyError(edge)


class LowerBoundReport(BaseModel):
    """Premises of the lower-bound argument, each checked exactly."""

    lower_bound: int
    pair_product_margin: int
    pair: Tuple[Edge, Edge]
    pillar_pair_product: bool
    pillar_face_slack: bool
    failing_faces: Dict[str, List[int]] = Field(default_factory=dict)
    triangle_pairs_checked: int
    triangle_failures: List[Tuple[int, int]] = Field(default_factory=list)
    minimizing_pair: Tuple[int, int]
    pillar_triangle: bool
    statement: str
    note: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.pillar_pair_product and self.pillar_face_slack and self.pillar_triangle
