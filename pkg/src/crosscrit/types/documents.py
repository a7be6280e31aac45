"""Graph, drawing and certificate documents."""

from typing import Dict, List, Optional

from pydantic import Field

from .._types import BaseModel, Edge
from .certificate import CombinatorialDrawing, ConditionReport, CriticalityReport, LowerBoundReport
from .synthesis import SynthesisCertificate


class GraphDocument(BaseModel):
    """Parsed graph input: vertices 0..n-1, edges, optional uv and weights."""

    version: int
    n: int
    edges: List[Edge] = Field(default_factory=list)
    uv: Optional[Edge] = None
    weights: Optional[Dict[Edge, int]] = None
    multiplicities: Optional[Dict[Edge, int]] = None


class DrawingDocument(BaseModel):
    """A combinatorial drawing and, when weights were given, its crossing total."""

    version: int
    drawing: CombinatorialDrawing
    crossings: Optional[int] = None


class CertificateDocument(BaseModel):
    """A synthesis certificate together with the reports computed from it."""

    version: int
    tool: str
    tool_version: str
    certificate: SynthesisCertificate
    conditions: ConditionReport
    criticality: CriticalityReport
    lower_bound: LowerBoundReport
    # order[input id] = certificate id, set when the input was relabeled first
    relabeling: Optional[List[int]] = None
