"""Command-line surface: validate, synthesize, certify, export."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence, Tuple

from ._client import DEFAULT_MAX_PERTURB_ROUNDS, VERSION, CrossCrit
from ._exceptions import CertificationFailedError, CrossCritError, DocumentError, ParseError, map_exit_code
from ._types import canonical_edge
from .resources.certify import upper_bound_drawing
from .resources.graphs import (
    invert_permutation,
    relabel,
    relabel_weighting,
    seed_permutation,
    weighted_to_multigraph,
)
from .serialization import (
    build_certificate_document,
    decode_certificate,
    document_graph,
    document_weighting,
    dumps,
    encode_certificate,
    export_dot,
    export_drawing,
    parse_graph,
    replay_certificate,
)
from .types.graph import IntegerWeighting, SimpleGraph
from .types.synthesis import SynthesisCertificate

logger = logging.getLogger("crosscrit")

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def _decode(raw: bytes, path: str) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        prefix = raw[: e.start]
        line = prefix.count(b"\n") + 1
        column = e.start - prefix.rfind(b"\n")
        raise ParseError(line, column, f"{path}: invalid UTF-8 at line {line}, column {column}") from e


def _read(path: str) -> str:
    if path == "-":
        return _decode(sys.stdin.buffer.read(), "<stdin>")
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e.strerror}") from e
    return _decode(raw, path)


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise DocumentError(f"cannot write {path}: {e.strerror}") from e


def _client(args: argparse.Namespace) -> CrossCrit:
    return CrossCrit(max_perturb_rounds=args.max_perturb_rounds)


def _input_ids(
    cert: SynthesisCertificate, order: Optional[Sequence[int]]
) -> Tuple[SimpleGraph, IntegerWeighting]:
    """G and omega under the input's vertex ids; ``order[input id] = certificate id``."""
    if order is None:
        return cert.graph, cert.omega
    inverse = invert_permutation(order)
    return relabel(cert.graph, inverse), relabel_weighting(cert.omega, inverse)


# --- Commands -----------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> int:
    doc = parse_graph(_read(args.input), require_uv=True)
    report = _client(args).graphs.validate(document_graph(doc), doc.uv)
    _write(args.output, dumps(report))
    for failure in report.failures:
        logger.warning("%s: %s", failure.name, failure.message)
    return 0 if report.accepted else 2


def cmd_synthesize(args: argparse.Namespace) -> int:
    doc = parse_graph(_read(args.input), require_uv=True)
    g = document_graph(doc)
    uv = doc.uv
    order = None
    if args.seed_order is not None:
        order = seed_permutation(len(g.vertices), args.seed_order)
        g = relabel(g, order)
        uv = canonical_edge(order[uv[0]], order[uv[1]])
        logger.info("relabeled vertices with seed %d; uv is now %s", args.seed_order, uv)

    cert = _client(args).synth.synthesize(g, uv)
    if args.format == "dot":
        # omega outgrows any expansion into parallel edges, so weights go on labels
        _write(args.output, export_dot(*_input_ids(cert, order)))
    else:
        _write(args.output, encode_certificate(build_certificate_document(cert, relabeling=order)))
    return 0


def cmd_certify(args: argparse.Namespace) -> int:
    fresh, identical = replay_certificate(_read(args.input))
    _write(args.output, encode_certificate(fresh))
    if not identical:
        raise CertificationFailedError("stored reports differ from the recomputed ones")
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    text = _read(args.input)
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        # parse_graph reports the position
        data = None
    is_certificate = isinstance(data, dict) and "certificate" in data

    if is_certificate:
        stored = decode_certificate(text)
        cert = stored.certificate
        if args.format == "dot":
            out = export_dot(*_input_ids(cert, stored.relabeling))
        else:
            out = export_drawing(upper_bound_drawing(cert), cert.omega)
    else:
        doc = parse_graph(text)
        g = document_graph(doc)
        if args.format == "native":
            out = dumps(doc)
        elif doc.multiplicities is not None:
            out = export_dot(weighted_to_multigraph(g, doc.multiplicities))
        else:
            out = export_dot(g, document_weighting(doc))
    _write(args.output, out)
    return 0


# --- Entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crosscrit", description="Synthesize and certify crossing-critical edge weightings"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, formats: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", "-i", default="-", help="input document (default: stdin)")
        p.add_argument("--output", "-o", default=None, help="output file (default: stdout)")
        p.add_argument(
            "--max-perturb-rounds",
            type=int,
            default=DEFAULT_MAX_PERTURB_ROUNDS,
            help=f"balance perturbation budget (default: {DEFAULT_MAX_PERTURB_ROUNDS})",
        )
        if formats:
            p.add_argument("--format", choices=("native", "dot"), default="native")
        return p

    add("validate", "check the hypotheses on a graph document").set_defaults(func=cmd_validate)
    synth = add("synthesize", "graph document -> certificate document", formats=True)
    synth.add_argument("--seed-order", type=int, default=None, help="relabel vertices with this seed first")
    synth.set_defaults(func=cmd_synthesize)
    add("certify", "recheck a certificate document").set_defaults(func=cmd_certify)
    add("export", "DOT or native export of a graph or certificate", formats=True).set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)

    try:
        return args.func(args)
    except CrossCritError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return map_exit_code(e)
    except Exception:
        logger.exception("unexpected error")
        return 1


if __name__ == "__main__":
    sys.exit(main())
