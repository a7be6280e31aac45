"""Synthesis of a weighting omega that makes (G, omega) crossing-critical."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .._client import DEFAULT_MAX_PERTURB_ROUNDS
from .._exceptions import (
    ClaimProofMismatchError,
    DegenerateAnchorsError,
    FinalCheckFailedError,
    HypothesisRejectedError,
)
from .._resource import BaseResource
from .._types import Edge, canonical_edge
from ..types.embedding import DistanceTable
from ..types.graph import IntegerWeighting, Multigraph, SimpleGraph
from ..types.synthesis import ClaimPoint, InequalityRow, InequalitySystem, SynthesisCertificate
from .balance import balanced_weights
from .embedding import all_pairs_distances, anchor_faces, dual_graph, faces, planar_embedding, transfer_weights
from .graphs import core_graph, validate_hypotheses, weighted_to_multigraph

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, Fraction, Fraction]

NOTES = [
    "v-side tight equalities use the v-side base face F_v on the right-hand side",
    "inequality rows range over the faces of G_{u,v}; the third gamma-1 coefficient is d(u_3, F_{u_1})",
    "the balanced dual weighting treats the dual as a loopless multigraph with parallel edges",
]


# --- Helper Functions -------------------------------------------------------


def is_feasible(system: InequalitySystem, point: Sequence[Fraction]) -> bool:
    """Every row holds with >= at the point."""
    return all(row.evaluate(tuple(point)) >= row.rhs for row in system.rows)


def tight_rows(system: InequalitySystem, point: Sequence[Fraction]) -> List[int]:
    """Faces whose rows hold with equality at the point."""
    return [row.face for row in system.rows if row.evaluate(tuple(point)) == row.rhs]


def critical_multigraph(cert: SynthesisCertificate) -> Multigraph:
    """G with every edge e replaced by omega(e) parallel copies."""
    return weighted_to_multigraph(cert.graph, cert.omega)


# --- Operations -------------------------------------------------------------


def build_inequality_system(dt: DistanceTable, side: str) -> InequalitySystem:
    """Rows d(w_1,F)x_1 + d(w_2,F)x_2 + d(w_3,F)x_3 >= d(F_base,F) for F != F_base.

    Raises:
        DegenerateAnchorsError: a gamma row loses positive integrality, or a
            non-gamma row has a zero coefficient
    """
    anchors = dt.anchors
    base = anchors.base(side)
    side_faces = anchors.sides(side)
    rows = []
    for face in range(dt.face_count):
        if face == base:
            continue
        coeffs = tuple(dt.terminal(side, i, face) for i in range(3))
        rhs = dt.d(base, face)
        gamma = side_faces.index(face) if face in side_faces else None
        for i, coeff in enumerate(coeffs):
            if gamma == i:
                if coeff != 0:
                    raise DegenerateAnchorsError(f"d({side}_{i + 1}, F_{side}{i + 1}) = {coeff}, expected 0")
            elif coeff <= 0:
                raise DegenerateAnchorsError(
                    f"d({side}_{i + 1}, face {face}) = {coeff}; coefficients must be positive off the gamma diagonal"
                )
        if gamma is not None and rhs <= 0:
            raise DegenerateAnchorsError(f"gamma row {gamma + 1} has right-hand side {rhs}")
        rows.append(InequalityRow(face=face, coefficients=coeffs, rhs=rhs, gamma=gamma))
    return InequalitySystem(side=side, base_face=base, side_faces=side_faces, rows=rows)


def claim_point(system: InequalitySystem) -> ClaimPoint:
    """Constructive feasible point with three tight faces.

    Picks the midpoint of the positive segment of the gamma-1/gamma-2 line,
    then slides x_1 to the largest crossing of the ray with any other row.

    Raises:
        ClaimProofMismatchError: the point is infeasible or not tight on recheck
    """
    g1 = system.gamma_row(0)
    g2 = system.gamma_row(1)
    _, b2, b3 = g1.coefficients
    c1, _, c3 = g2.coefficients
    # Line g1 = g2 = equality; x_3 is the free parameter, positive on (0, tau_max)
    tau = min(Fraction(g1.rhs, b3), Fraction(g2.rhs, c3)) / 2
    a3 = tau
    a2 = (g1.rhs - b3 * tau) / b2
    a1 = (g2.rhs - c3 * tau) / c1

    best = None
    achieving: List[int] = []
    for row in system.rows:
        if row is g1:
            continue
        alpha, beta, gamma = row.coefficients
        crossing = (row.rhs - beta * a2 - gamma * a3) / alpha
        if best is None or crossing > best:
            best, achieving = crossing, [row.face]
        elif crossing == best:
            achieving.append(row.face)
    assert best is not None

    point: Point = (best, a2, a3)
    u1 = min(achieving)
    tight_faces = (u1, g1.face, g1.face)
    if any(x <= 0 for x in point):
        raise ClaimProofMismatchError(f"{system.side}-side claim point {point} is not positive")
    if not is_feasible(system, point):
        raise ClaimProofMismatchError(f"{system.side}-side claim point {point} violates a row")
    tight = set(tight_rows(system, point))
    if not set(tight_faces) <= tight:
        raise ClaimProofMismatchError(f"{system.side}-side faces {tight_faces} are not all tight")
    positive = tuple(system.row_for(face).coefficients[i] > 0 for i, face in enumerate(tight_faces))
    if not all(positive):
        raise ClaimProofMismatchError(f"{system.side}-side tight faces have a zero distance: {positive}")

    logger.debug("%s-side claim point %s, tight faces %s", system.side, point, tight_faces)
    return ClaimPoint(side=system.side, point=point, tight_faces=tight_faces, tight_positive=positive)


def integerize(p_u: ClaimPoint, p_v: ClaimPoint) -> Tuple[int, Tuple[int, int, int], Tuple[int, int, int]]:
    """M = q1 q2 q3 b1 b2 b3, r_i = p_i M / q_i, s_i = a_i M / b_i, from reduced fractions."""
    big_m = 1
    for x in tuple(p_u.point) + tuple(p_v.point):
        big_m *= Fraction(x).denominator
    r = tuple(Fraction(x).numerator * (big_m // Fraction(x).denominator) for x in p_u.point)
    s = tuple(Fraction(x).numerator * (big_m // Fraction(x).denominator) for x in p_v.point)
    return big_m, r, s  # type: ignore[return-value]


def choose_c(M: int, d_fu_fv: int, min_mu: int, r: Sequence[int], s: Sequence[int]) -> int:
    """Smallest integer above both M d / min^2 and 9 r_i s_j / min."""
    spoke = max(ri * sj for ri in r for sj in s)
    return 1 + max((M * d_fu_fv) // (min_mu * min_mu), (9 * spoke) // min_mu)


def synthesize(
    g: SimpleGraph,
    uv: Edge,
    *,
    max_rounds: int = DEFAULT_MAX_PERTURB_ROUNDS,
) -> SynthesisCertificate:
    """Run the full pipeline and return a certificate that passes check_conditions.

    Raises:
        HypothesisRejectedError: validate_hypotheses rejects (G, uv)
        FinalCheckFailedError: the assembled certificate fails its own recheck
    """
    from .certify import check_conditions

    uv = canonical_edge(*uv)
    report = validate_hypotheses(g, uv)
    if not report.accepted:
        raise HypothesisRejectedError(report)
    u, v = uv

    core = core_graph(g, uv)
    rotation = planar_embedding(core)
    fs = faces(rotation)
    dual = dual_graph(fs)
    anchors = anchor_faces(fs, report.u_neighbors, report.v_neighbors)
    logger.info("G_{u,v}: %d faces, F_u=%d, F_v=%d", fs.face_count, anchors.f_u, anchors.f_v)

    dual_multi = Multigraph(vertices=list(dual.faces), multiplicities=dual.pair_multiplicities())
    balanced = balanced_weights(dual_multi, anchors.f_u, anchors.f_v, max_rounds=max_rounds)
    mu = IntegerWeighting(weights={e: balanced.weighting.weights[pair] for e, pair in dual.edges.items()})
    table = all_pairs_distances(dual, transfer_weights(mu, dual), anchors)

    u_claim = claim_point(build_inequality_system(table, "u"))
    v_claim = claim_point(build_inequality_system(table, "v"))
    big_m, r, s = integerize(u_claim, v_claim)
    min_mu = mu.minimum()
    c = choose_c(big_m, table.terminal_distance, min_mu, r, s)
    logger.info("M has %d digits, c has %d digits", len(str(big_m)), len(str(c)))

    omega: Dict[Edge, int] = {uv: big_m}
    for centre, nbrs, values in ((u, anchors.u_neighbors, r), (v, anchors.v_neighbors, s)):
        for w, value in zip(nbrs, values):
            omega[canonical_edge(centre, w)] = value
    for edge, weight in mu.weights.items():
        omega[edge] = c * weight

    cert = SynthesisCertificate(
        graph=g,
        uv=uv,
        rotation=rotation,
        anchors=anchors,
        mu=mu,
        mu_distances=table,
        u_claim=u_claim,
        v_claim=v_claim,
        M=big_m,
        r=r,
        s=s,
        c=c,
        omega=IntegerWeighting(weights=dict(sorted(omega.items()))),
        balance_round=balanced.round,
        notes=list(NOTES),
    )

    conditions = check_conditions(cert)
    if not conditions.passed:
        raise FinalCheckFailedError(
            conditions, f"synthesized certificate fails conditions {', '.join(conditions.failing)}"
        )
    return cert


# --- Resource ---------------------------------------------------------------


class SynthesisResource(BaseResource):
    """Weight synthesis (``client.synth``)."""

    def synthesize(self, g: SimpleGraph, uv: Edge, *, use_cache: bool = True) -> SynthesisCertificate:
        rounds = self._client.max_perturb_rounds
        key = self._key("synthesize", g, canonical_edge(*uv), rounds)
        return self._cached(key, lambda: synthesize(g, uv, max_rounds=rounds), use_cache=use_cache)

    def system(self, dt: DistanceTable, side: str) -> InequalitySystem:
        return build_inequality_system(dt, side)

    def claim(self, system: InequalitySystem) -> ClaimPoint:
        return claim_point(system)

    def multigraph(self, cert: SynthesisCertificate) -> Multigraph:
        return critical_multigraph(cert)
