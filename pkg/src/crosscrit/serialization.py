"""Graph, drawing and certificate documents; DOT export."""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple, Type, TypeVar, Union

from pydantic import ValidationError

from ._client import DOCUMENT_VERSION, VERSION
from ._exceptions import GraphError, ParseError, SchemaError
from ._types import BaseModel, canonical_edge, edge_key, format_fraction
from .resources.certify import certify_critical, check_conditions, count_crossings, lower_bound_certificate
from .resources.graphs import build_simple_graph
from .types.certificate import CombinatorialDrawing
from .types.documents import CertificateDocument, DrawingDocument, GraphDocument
from .types.graph import IntegerWeighting, Multigraph, SimpleGraph
from .types.synthesis import SynthesisCertificate

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)

TOOL_NAME = "crosscrit"


# --- Helper Functions -------------------------------------------------------


def encode_value(value: Any) -> Any:
    """JSON-ready form: integers and rationals as decimal strings, edge keys as ``a-b``."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, dict):
        return {_encode_key(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    raise TypeError(f"cannot encode {type(value).__name__}")


def _encode_key(key: Any) -> str:
    if isinstance(key, tuple):
        return edge_key(key)
    return str(key)


def dumps(model: BaseModel) -> str:
    """Canonical document text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(encode_value(model.model_dump()), sort_keys=True, indent=2) + "\n"


def _field_of(error: ValidationError) -> str:
    loc = error.errors()[0].get("loc", ())
    return str(loc[0]) if loc else "document"


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.lineno, e.colno, f"line {e.lineno}, column {e.colno}: {e.msg}") from e


def loads(text: str, model: Type[M]) -> M:
    """Decode document text into ``model``.

    Raises:
        ParseError: the text is not JSON
        SchemaError: the JSON does not match the model
    """
    data = _load(text)
    try:
        return model.model_validate(data)
    except ValidationError as e:
        field = _field_of(e)
        raise SchemaError(field, f"invalid field {field!r}: {e.errors()[0]['msg']}") from e


def _check_version(version: int) -> None:
    if version != DOCUMENT_VERSION:
        raise SchemaError("version", f"unsupported document version {version}, expected {DOCUMENT_VERSION}")


def _quote(text: Any) -> str:
    return '"' + str(text).replace('"', '\\"') + '"'


# --- Graph documents ----------------------------------------------------------


def parse_graph(text: str, *, require_uv: bool = False) -> GraphDocument:
    """Parse and validate a graph document.

    Raises:
        ParseError: syntax error, with line and column
        SchemaError: a field is missing or invalid (``uv`` when required and
            absent, non-positive weights, edges outside the graph)
    """
    data = _load(text)
    if not isinstance(data, dict):
        raise SchemaError("document", "graph document must be a JSON object")
    try:
        doc = GraphDocument.model_validate(data)
    except ValidationError as e:
        field = _field_of(e)
        raise SchemaError(field, f"invalid field {field!r}: {e.errors()[0]['msg']}") from e

    _check_version(doc.version)
    try:
        g = build_simple_graph(doc.n, doc.edges)
    except GraphError as e:
        raise SchemaError("edges", str(e)) from e
    edges = set(g.edges)

    uv = canonical_edge(*doc.uv) if doc.uv is not None else None
    if uv is None:
        if require_uv:
            raise SchemaError("uv", "designated edge uv is required")
    elif uv not in edges:
        raise SchemaError("uv", f"designated edge {uv} is not an edge of the graph")

    for name, table in (("weights", doc.weights), ("multiplicities", doc.multiplicities)):
        if table is None:
            continue
        for edge, value in table.items():
            if edge not in edges:
                raise SchemaError(name, f"{name} key {edge_key(edge)} is not an edge of the graph")
            if value < 1:
                raise SchemaError(name, f"{name} of {edge_key(edge)} must be positive, got {value}")
        if set(table) != edges:
            raise SchemaError(name, f"{name} must cover every edge")

    logger.debug("parsed graph document: n=%d, %d edges", doc.n, len(doc.edges))
    return doc.model_copy(update={"edges": g.edges, "uv": uv})


def document_graph(doc: GraphDocument) -> SimpleGraph:
    return build_simple_graph(doc.n, doc.edges)


def document_weighting(doc: GraphDocument) -> Optional[IntegerWeighting]:
    table = doc.weights if doc.weights is not None else doc.multiplicities
    return IntegerWeighting(weights=dict(sorted(table.items()))) if table is not None else None


def graph_document(
    g: SimpleGraph, uv: Optional[Tuple[int, int]] = None, w: Optional[IntegerWeighting] = None
) -> GraphDocument:
    return GraphDocument(
        version=DOCUMENT_VERSION,
        n=len(g.vertices),
        edges=list(g.edges),
        uv=uv,
        weights=dict(w.weights) if w is not None else None,
    )


# --- Exports --------------------------------------------------------------------


def export_dot(
    g: Union[SimpleGraph, Multigraph],
    w: Optional[Union[IntegerWeighting, Dict[Tuple[int, int], int]]] = None,
    *,
    name: str = "G",
) -> str:
    """Graphviz text; nodes ascending, edges in canonical order, weights as labels.

    A multigraph is written with every parallel class expanded.
    """
    lines = [f"graph {name} {{"]
    for v in sorted(g.vertices):
        lines.append(f"  {v};")
    if isinstance(g, Multigraph):
        for (a, b), count in sorted(g.multiplicities.items()):
            lines.extend(f"  {a} -- {b};" for _ in range(count))
    else:
        weights = w.weights if isinstance(w, IntegerWeighting) else w
        for a, b in sorted(g.edges):
            if weights is None:
                lines.append(f"  {a} -- {b};")
            else:
                lines.append(f"  {a} -- {b} [label={_quote(weights[(a, b)])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_drawing(d: CombinatorialDrawing, w: Optional[IntegerWeighting] = None) -> str:
    """Host faces, dual walks as face sequences, spoke crossings and, given weights, the total."""
    total = count_crossings(d, w) if w is not None else None
    return dumps(DrawingDocument(version=DOCUMENT_VERSION, drawing=d, crossings=total))


def parse_drawing(text: str) -> CombinatorialDrawing:
    """Inverse of :func:`export_drawing`; the stored total is not trusted."""
    doc = loads(text, DrawingDocument)
    _check_version(doc.version)
    return doc.drawing


# --- Certificates -----------------------------------------------------------------


def build_certificate_document(
    cert: SynthesisCertificate, *, relabeling: Optional[Sequence[int]] = None
) -> CertificateDocument:
    """Certificate plus freshly computed condition, criticality and lower-bound reports.

    ``relabeling`` records ``order[input id] = certificate id`` when the
    certificate was synthesized on a relabeled copy of the input.
    """
    return CertificateDocument(
        version=DOCUMENT_VERSION,
        tool=TOOL_NAME,
        tool_version=VERSION,
        certificate=cert,
        conditions=check_conditions(cert),
        criticality=certify_critical(cert),
        lower_bound=lower_bound_certificate(cert),
        relabeling=list(relabeling) if relabeling is not None else None,
    )


def encode_certificate(doc: CertificateDocument) -> str:
    return dumps(doc)


def decode_certificate(text: str) -> CertificateDocument:
    doc = loads(text, CertificateDocument)
    _check_version(doc.version)
    if doc.relabeling is not None and sorted(doc.relabeling) != sorted(doc.certificate.graph.vertices):
        raise SchemaError("relabeling", "relabeling is not a permutation of the certificate's vertex ids")
    return doc


def replay_certificate(text: str) -> Tuple[CertificateDocument, bool]:
    """Recompute every report from the stored certificate alone.

    Returns the recomputed document and whether its encoding matches the
    stored text exactly.
    """
    stored = decode_certificate(text)
    fresh = build_certificate_document(stored.certificate, relabeling=stored.relabeling)
    fresh = fresh.model_copy(update={"tool": stored.tool, "tool_version": stored.tool_version})
    identical = encode_certificate(fresh) == encode_certificate(stored)
    logger.info("replay %s", "matches stored reports" if identical else "differs from stored reports")
    return fresh, identical
