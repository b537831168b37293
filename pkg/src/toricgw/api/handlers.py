"""Request handlers: the single compute path behind service and CLI.

Each handler turns a request model into a response model and raises the
package's domain errors on bad input; callers decide how those become
exit codes or HTTP statuses.  Nothing here does mathematics: handlers
parse payloads, call the library, and shape results.
"""
from __future__ import annotations

import hashlib

from ..errors import (
    ConsistencyError,
    DegenerateEvalPointError,
    FanError,
    InputError,
    ResourceBudgetError,
)
from ..fan import CohomClass, Fan, format_rational, parse_fan
from ..graphs import DecoratedGraph
from ..invariants import gw_invariant, pd_point_invariant, psi_intersection
from ..moment import build_moment_graph
from ..quantum import InvariantCache, build_pairing, check_relation, quantum_multi_product
from .schemas import (
    CheckItem,
    CheckRelationRequest,
    CheckRelationResponse,
    FixedPointModel,
    GraphLine,
    GwRequest,
    GwResponse,
    MomentEdgeModel,
    MomentGraphRequest,
    MomentGraphResponse,
    PsiRequest,
    PsiResponse,
    QprodRequest,
    QprodResponse,
    QTerm,
    TraceLine,
    ValidateRequest,
    ValidateResponse,
)

__all__ = [
    "handle_validate",
    "handle_moment_graph",
    "handle_psi",
    "handle_gw",
    "handle_qprod",
    "handle_check_relation",
    "error_kind",
]

_ERROR_KINDS = (
    (FanError, "fan"),
    (InputError, "input"),
    (ResourceBudgetError, "budget"),
    (ConsistencyError, "consistency"),
    (DegenerateEvalPointError, "degenerate"),
)


def error_kind(exc: Exception) -> str:
    """Stable category string for an error payload."""
    for cls, kind in _ERROR_KINDS:
        if isinstance(exc, cls):
            return kind
    return "internal"


def _load_fan(payload) -> Fan:
    fan = parse_fan(payload)
    fan.require_valid()
    return fan


def _parse_classes(fan: Fan, items, what: str) -> list[CohomClass]:
    out = []
    for i, item in enumerate(items):
        try:
            out.append(CohomClass.from_payload(fan, item))
        except InputError as exc:
            raise InputError(f"{what} {i}: {exc}") from exc
    return out


def graph_key(graph: DecoratedGraph) -> str:
    """Short stable identifier tying --dump-graphs lines to --trace lines."""
    return hashlib.sha256(repr(graph.key()).encode()).hexdigest()[:16]


def handle_validate(req: ValidateRequest) -> ValidateResponse:
    try:
        fan = parse_fan(req.fan)
    except FanError as exc:
        return ValidateResponse(passed=False, error=str(exc))
    report = fan.validate()
    return ValidateResponse(
        passed=report.passed,
        checks=[CheckItem(name=c.name, passed=c.passed, detail=c.detail) for c in report.checks],
        dim=fan.dim,
        n_rays=fan.n_rays,
        n_max_cones=len(fan.max_cones),
    )


def handle_moment_graph(req: MomentGraphRequest) -> MomentGraphResponse:
    mg = build_moment_graph(_load_fan(req.fan))
    return MomentGraphResponse(
        n_points=len(mg.points),
        n_edges=len(mg.edges),
        points=[
            FixedPointModel(
                index=p.index,
                rays=list(p.rays),
                weights=[list(w) for w in p.weights],
                neighbors=list(p.neighbors),
            )
            for p in mg.points
        ],
        edges=[
            MomentEdgeModel(
                index=e.index,
                points=[e.a, e.b],
                wall=list(e.wall),
                curve_class=list(e.curve_class),
                weight_at_a=list(e.weight_a),
                weight_at_b=list(e.weight_b),
            )
            for e in mg.edges
        ],
    )


def handle_psi(req: PsiRequest) -> PsiResponse:
    return PsiResponse(value=format_rational(psi_intersection(req.m, tuple(req.d))))


def handle_gw(req: GwRequest) -> GwResponse:
    fan = _load_fan(req.fan)
    mg = build_moment_graph(fan)
    insertions = _parse_classes(fan, req.insertions, "insertion")
    m = len(insertions)
    if req.pd_point and req.psi is not None:
        raise InputError("psi exponents and the point normalization are exclusive")

    sink: list[tuple[DecoratedGraph, object]] | None = (
        [] if (req.trace or req.dump_graphs) else None
    )
    common = dict(
        seed=req.seed,
        jobs=req.jobs,
        check_independence=req.check_independence,
        trace_sink=sink,
    )
    if req.pd_point:
        result = pd_point_invariant(mg, tuple(req.curve_class), insertions, **common)
        trace_scale = 1
    else:
        dvec = tuple(req.psi) if req.psi is not None else (0,) * m
        result = gw_invariant(mg, tuple(req.curve_class), insertions, dvec, **common)
        # the published value carries the cotangent multiplicity; scale the
        # per-graph summands to match so trace lines add up to it
        trace_scale = psi_intersection(m, dvec) if sum(dvec) > 0 else 1

    graphs = None
    trace = None
    if sink is not None:
        if req.dump_graphs:
            graphs = []
            for g, _ in sink:
                payload = g.to_payload(mg)
                graphs.append(
                    GraphLine(
                        graph=graph_key(g),
                        vertices=payload["vertices"],
                        edges=payload["edges"],
                    )
                )
        if req.trace:
            trace = [
                TraceLine(graph=graph_key(g), contribution=format_rational(c * trace_scale))
                for g, c in sink
            ]
    return GwResponse(
        invariant=format_rational(result.value),
        mode=result.mode,
        n_graphs=result.n_graphs,
        seeds=list(result.seeds),
        graphs=graphs,
        trace=trace,
    )


def handle_qprod(req: QprodRequest) -> QprodResponse:
    fan = _load_fan(req.fan)
    mg = build_moment_graph(fan)
    table = build_pairing(mg, req.seed)
    factors = _parse_classes(fan, req.factors, "factor")
    poly = quantum_multi_product(
        mg,
        table,
        factors,
        tuple(req.caps),
        cache=InvariantCache(),
        seed=req.seed,
        jobs=req.jobs,
    )
    payload = poly.to_payload(table)
    return QprodResponse(
        generators=payload["generators"],
        caps=payload["caps"],
        basis=table.to_payload()["basis"],
        terms=[QTerm.model_validate(t) for t in payload["terms"]],
    )


def handle_check_relation(req: CheckRelationRequest) -> CheckRelationResponse:
    fan = _load_fan(req.fan)
    mg = build_moment_graph(fan)
    table = build_pairing(mg, req.seed)
    report, lhs, rhs = check_relation(
        mg,
        table,
        _parse_classes(fan, req.lhs, "lhs factor"),
        _parse_classes(fan, req.rhs, "rhs factor"),
        tuple(req.caps),
        lhs_shift=tuple(req.lhs_shift) if req.lhs_shift is not None else None,
        rhs_shift=tuple(req.rhs_shift) if req.rhs_shift is not None else None,
        cache=InvariantCache(),
        seed=req.seed,
        jobs=req.jobs,
    )
    return CheckRelationResponse.model_validate(report.to_payload(table, lhs, rhs))
