"""crosscrit type definitions."""

from .._types import BaseModel, Edge, Rational
from .balance import BalanceReport, BalancedCertificate, HarmonicPositions
from .certificate import (
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
from .documents import CertificateDocument, DrawingDocument, GraphDocument
from .embedding import AnchorFaces, DistanceTable, DualGraph, FaceSet, RotationSystem
from .graph import (
    HypothesisFailure,
    HypothesisReport,
    IntegerWeighting,
    Multigraph,
    RationalWeighting,
    SeparationWitness,
    SimpleGraph,
)
from .synthesis import ClaimPoint, InequalityRow, InequalitySystem, SynthesisCertificate

__all__ = [
    # Base types
    "BaseModel",
    "Edge",
    "Rational",
    # Graph types
    "SimpleGraph",
    "Multigraph",
    "IntegerWeighting",
    "RationalWeighting",
    "SeparationWitness",
    "HypothesisFailure",
    "HypothesisReport",
    # Embedding types
    "RotationSystem",
    "FaceSet",
    "DualGraph",
    "AnchorFaces",
    "DistanceTable",
    # Balance types
    "HarmonicPositions",
    "BalanceReport",
    "BalancedCertificate",
    # Synthesis types
    "InequalityRow",
    "InequalitySystem",
    "ClaimPoint",
    "SynthesisCertificate",
    # Certificate types
    "DualWalk",
    "SpokeRoute",
    "CombinatorialDrawing",
    "BalanceCondition",
    "PairProductCondition",
    "FaceSlackCondition",
    "TightnessCondition",
    "SpokeProductCondition",
    "ConditionReport",
    "EdgeWitness",
    "CriticalityReport",
    "LowerBoundReport",
    # Documents
    "GraphDocument",
    "CertificateDocument",
    "DrawingDocument",
]
