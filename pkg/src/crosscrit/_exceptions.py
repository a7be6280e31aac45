# src/crosscrit/_exceptions.py

from typing import Any, List, Optional, Sequence, Tuple


class CrossCritError(Exception):
    """Base exception for all crosscrit errors."""

    exit_code: int = 1


# --- Graph input -------------------------------------------------------------


class GraphError(CrossCritError):
    """Malformed graph or weighting input."""

    exit_code = 4


class InvalidEdgeError(GraphError):
    """Loop edge or edge referencing an unknown vertex."""


class DuplicateEdgeError(GraphError):
    """The same unordered pair was given twice."""


class MissingEdgeError(GraphError):
    """The designated edge is not an edge of the graph."""


class IncompleteWeightingError(GraphError):
    """A weighting does not cover every edge, or has a non-positive weight."""


# --- Hypothesis failures -----------------------------------------------------


class HypothesisError(CrossCritError):
    """The input does not satisfy the hypotheses of the construction."""

    exit_code = 2


class HypothesisRejectedError(HypothesisError):
    """validate_hypotheses rejected the input; the report is attached."""

    def __init__(self, report: Any, message: Optional[str] = None):
        self.report = report
        failures = getattr(report, "failures", [])
        names = ", ".join(f.name for f in failures) or "unknown"
        super().__init__(message or f"hypotheses rejected: {names}")


class NotPlanarError(HypothesisError):
    """Graph is not planar. ``witness`` holds a Kuratowski subgraph's edges."""

    def __init__(
        self,
        message: Optional[str] = None,
        witness: Optional[Sequence[Tuple[int, int]]] = None,
    ):
        self.witness: List[Tuple[int, int]] = list(witness or [])
        super().__init__(message or "graph is not planar")


class NotTwoConnectedError(HypothesisError):
    """A bridge (dual loop) or a cut vertex was found."""


class AnchorAmbiguousError(HypothesisError):
    """A terminal-neighbour triple has zero or several common faces."""


class GNotNonplanarError(HypothesisError):
    """F_u and F_v coincide, so G would be planar."""


class DegenerateAnchorsError(HypothesisError):
    """Positive integrality of the Gamma rows fails."""


# --- Construction / certification -------------------------------------------


class ConstructionError(CrossCritError):
    """A construction or certification step failed on accepted input."""

    exit_code = 3


class CorruptRotationError(ConstructionError):
    """Face tracing does not close or Euler's formula fails."""


class BalanceFailedError(ConstructionError):
    """Perturbation budget exhausted without a balanced weighting."""


class ClaimProofMismatchError(ConstructionError):
    """A claim point fails feasibility or tightness on exact recheck."""


class FinalCheckFailedError(ConstructionError):
    """check_conditions rejected a freshly synthesized certificate."""

    def __init__(self, report: Any, message: Optional[str] = None):
        self.report = report
        super().__init__(message or "synthesized certificate fails check_conditions")


class MalformedDrawingError(ConstructionError):
    """A routed walk is not a valid dual walk, or crosses an adjacent edge."""


class BalancednessViolatedError(ConstructionError):
    """No shortest F_uF_v path passes through the requested dual edge."""


class CertificationFailedError(ConstructionError):
    """A criticality witness does not strictly decrease the crossing count."""


class InternalInvariantError(ConstructionError):
    """An internal invariant that holds on valid input was violated."""


# --- Documents ---------------------------------------------------------------


class DocumentError(CrossCritError):
    """Problem reading a graph, drawing or certificate document."""

    exit_code = 4


class ParseError(DocumentError):
    """Syntax error at a line/column position."""

    def __init__(self, line: int, column: int, message: Optional[str] = None):
        self.line = line
        self.column = column
        super().__init__(message or f"parse error at line {line}, column {column}")


class SchemaError(DocumentError):
    """Semantic error in a named document field."""

    def __init__(self, field: str, message: Optional[str] = None):
        self.field = field
        super().__init__(message or f"invalid field {field!r}")


def map_exit_code(error: BaseException) -> int:
    """Map an exception to the CLI exit code.

    Args:
        error: Exception raised while running a command

    Returns:
        0 is never returned; 2 hypothesis rejection, 3 certification failure,
        4 parse/schema/graph input error, 1 anything else
    """
    if isinstance(error, CrossCritError):
        return error.exit_code
    return 1
