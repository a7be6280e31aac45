from __future__ import annotations

from ._client import DEFAULT_CACHE_SIZE, DEFAULT_MAX_PERTURB_ROUNDS, DOCUMENT_VERSION, VERSION, CrossCrit
from ._exceptions import (
    AnchorAmbiguousError,
    BalancednessViolatedError,
    BalanceFailedError,
    CertificationFailedError,
    ClaimProofMismatchError,
    ConstructionError,
    CorruptRotationError,
    CrossCritError,
    DegenerateAnchorsError,
    DocumentError,
    DuplicateEdgeError,
    FinalCheckFailedError,
    GNotNonplanarError,
    GraphError,
    HypothesisError,
    HypothesisRejectedError,
    IncompleteWeightingError,
    InternalInvariantError,
    InvalidEdgeError,
    MalformedDrawingError,
    MissingEdgeError,
    NotPlanarError,
    NotTwoConnectedError,
    ParseError,
    SchemaError,
    map_exit_code,
)

__version__ = VERSION

__all__ = [
    "CrossCrit",
    "DEFAULT_MAX_PERTURB_ROUNDS",
    "DEFAULT_CACHE_SIZE",
    "DOCUMENT_VERSION",
    "CrossCritError",
    "GraphError",
    "InvalidEdgeError",
    "DuplicateEdgeError",
    "MissingEdgeError",
    "IncompleteWeightingError",
    "HypothesisError",
    "HypothesisRejectedError",
    "NotPlanarError",
    "NotTwoConnectedError",
    "AnchorAmbiguousError",
    "GNotNonplanarError",
    "DegenerateAnchorsError",
    "ConstructionError",
    "CorruptRotationError",
    "BalanceFailedError",
    "ClaimProofMismatchError",
    "FinalCheckFailedError",
    "MalformedDrawingError",
    "BalancednessViolatedError",
    "CertificationFailedError",
    "InternalInvariantError",
    "DocumentError",
    "ParseError",
    "SchemaError",
    "map_exit_code",
]
