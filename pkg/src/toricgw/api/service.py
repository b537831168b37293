"""HTTP wrapper exposing the handlers one route per subcommand.

Domain errors map onto stable JSON bodies: bad inputs are 400s, internal
cross-check failures are 500s.  Responses are the same models the command
line renders, so a thin client can swap between in-process and remote
execution without changing its output.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import ToricGWError
from .handlers import (
    error_kind,
    handle_check_relation,
    handle_gw,
    handle_moment_graph,
    handle_psi,
    handle_qprod,
    handle_validate,
)
from .schemas import (
    CheckRelationRequest,
    CheckRelationResponse,
    ErrorResponse,
    GwRequest,
    GwResponse,
    MomentGraphRequest,
    MomentGraphResponse,
    PsiRequest,
    PsiResponse,
    QprodRequest,
    QprodResponse,
    ValidateRequest,
    ValidateResponse,
    error_response,
)

__all__ = ["app", "create_app", "error_status"]


def error_status(exc: Exception) -> int:
    # caller mistakes are 400s; a failed internal cross-check is on us
    return 400 if error_kind(exc) in ("fan", "input", "budget") else 500


def create_app() -> FastAPI:
    app = FastAPI(
        title="toricgw",
        description="Exact genus-zero Gromov-Witten invariants of toric varieties",
        version="0.1.0",
    )

    @app.exception_handler(ToricGWError)
    async def _domain_error(request: Request, exc: ToricGWError) -> JSONResponse:
        body = error_response(error_kind(exc), str(exc))
        return JSONResponse(status_code=error_status(exc), content=body.model_dump())

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post(
        "/v1/validate",
        response_model=ValidateResponse,
        response_model_exclude_none=True,
        responses={400: {"model": ErrorResponse}},
    )
    def validate(req: ValidateRequest) -> ValidateResponse:
        return handle_validate(req)

    @app.post(
        "/v1/moment-graph",
        response_model=MomentGraphResponse,
        response_model_exclude_none=True,
        responses={400: {"model": ErrorResponse}},
    )
    def moment_graph(req: MomentGraphRequest) -> MomentGraphResponse:
        return handle_moment_graph(req)

    @app.post(
        "/v1/psi",
        response_model=PsiResponse,
        response_model_exclude_none=True,
        responses={400: {"model": ErrorResponse}},
    )
    def psi(req: PsiRequest) -> PsiResponse:
        return handle_psi(req)

    @app.post(
        "/v1/gw",
        response_model=GwResponse,
        response_model_exclude_none=True,
        responses={400: {"model": ErrorResponse}},
    )
    def gw(req: GwRequest) -> GwResponse:
        return handle_gw(req)

    @app.post(
        "/v1/qprod",
        response_model=QprodResponse,
        response_model_exclude_none=True,
        responses={400: {"model": ErrorResponse}},
    )
    def qprod(req: QprodRequest) -> QprodResponse:
        return handle_qprod(req)

    @app.post(
        "/v1/check-relation",
        response_model=CheckRelationResponse,
        response_model_exclude_none=True,
        responses={400: {"model": ErrorResponse}},
    )
    def relation(req: CheckRelationRequest) -> CheckRelationResponse:
        return handle_check_relation(req)

    return app


app = create_app()
