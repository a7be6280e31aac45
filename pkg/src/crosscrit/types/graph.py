"""Graph, multigraph and weighting models."""

from typing import Dict, List, Optional, Tuple

from pydantic import Field, model_validator

from .._types import BaseModel, Edge, Rational


class SimpleGraph(BaseModel):
    """Loopless graph without parallel edges; edges stored as sorted (min, max) pairs."""

    vertices: List[int]
    edges: List[Edge] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_edges(self) -> "SimpleGraph":
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise ValueError("repeated vertex id")
        seen = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"loop edge ({a},{b})")
            if a > b:
                raise ValueError(f"edge ({a},{b}) is not canonical")
            if a not in known or b not in known:
                raise ValueError(f"edge ({a},{b}) references an unknown vertex")
            if (a, b) in seen:
                raise ValueError(f"duplicate edge ({a},{b})")
            seen.add((a, b))
        return self


class Multigraph(BaseModel):
    """Loopless multigraph: each unordered pair carries a multiplicity >= 1."""

    vertices: List[int]
    multiplicities: Dict[Edge, int] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_multiplicities(self) -> "Multigraph":
        known = set(self.vertices)
        for (a, b), count in self.multiplicities.items():
            if a == b:
                raise ValueError(f"loop edge ({a},{b})")
            if a > b:
                raise ValueError(f"edge ({a},{b}) is not canonical")
            if a not in known or b not in known:
                raise ValueError(f"edge ({a},{b}) references an unknown vertex")
            if count < 1:
                raise ValueError(f"multiplicity of ({a},{b}) must be >= 1, got {count}")
        return self

    @property
    def edge_count(self) -> int:
        return sum(self.multiplicities.values())


class IntegerWeighting(BaseModel):
    """Positive integer weight per edge; weights are edge multiplicities."""

    weights: Dict[Edge, int] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_positive(self) -> "IntegerWeighting":
        for (a, b), w in self.weights.items():
            if a >= b:
                raise ValueError(f"edge ({a},{b}) is not canonical")
            if w < 1:
                raise ValueError(f"weight of ({a},{b}) must be >= 1, got {w}")
        return self

    def __getitem__(self, edge: Edge) -> int:
        return self.weights[edge]

    def weight(self, a: int, b: int) -> int:
        return self.weights[(min(a, b), max(a, b))]

    def minimum(self) -> int:
        return min(self.weights.values())


class RationalWeighting(BaseModel):
    """Positive rational weight per edge (internal to balance and synth)."""

    weights: Dict[Edge, Rational] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_positive(self) -> "RationalWeighting":
        for edge, w in self.weights.items():
            if w <= 0:
                raise ValueError(f"weight of {edge} must be > 0, got {w}")
        return self


class SeparationWitness(BaseModel):
    """An order-two separation (G1, G2) with both sides carrying >= 3 edges."""

    pair: Tuple[int, int]
    side_one: List[int]
    side_two: List[int]
    edges_one: int
    edges_two: int


class HypothesisFailure(BaseModel):
    """A named hypothesis violation with an optional witness."""

    name: str
    message: str
    separation: Optional[SeparationWitness] = None
    witness_edges: List[Edge] = Field(default_factory=list)
    witness_vertices: List[int] = Field(default_factory=list)


class HypothesisReport(BaseModel):
    """Result of checking the hypotheses of the construction on (G, uv)."""

    uv: Edge
    is_simple: bool
    g_minus_uv_cubic: bool
    g_minus_uv_3connected: bool
    g_minus_uv_planar: bool
    g_nonplanar: bool
    guv_internally_3connected: bool
    u_neighbors: List[int] = Field(default_factory=list)
    v_neighbors: List[int] = Field(default_factory=list)
    neighbor_distinctness: bool
    failures: List[HypothesisFailure] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_distinct(self) -> "HypothesisReport":
        if self.neighbor_distinctness:
            six = list(self.u_neighbors) + list(self.v_neighbors)
            if len(six) != 6 or len(set(six)) != 6:
                raise ValueError("neighbor_distinctness set but terminals are not six distinct vertices")
        return self

    @property
    def accepted(self) -> bool:
        return all(
            (
                self.is_simple,
                self.g_minus_uv_cubic,
                self.g_minus_uv_3connected,
                self.g_minus_uv_planar,
                self.g_nonplanar,
                self.guv_internally_3connected,
                self.neighbor_distinctness,
            )
        )

    def failure(self, name: str) -> Optional[HypothesisFailure]:
        for f in self.failures:
            if f.name == name:
                return f
        return None
