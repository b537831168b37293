"""Request/response models, handlers, and the service wrapper.

The handlers are plain functions from request models to response models;
the command line calls them in-process and the HTTP service exposes the
same functions unchanged, so both fronts produce identical payloads.
"""
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
    ErrorBody,
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

__all__ = [
    "ValidateRequest",
    "ValidateResponse",
    "MomentGraphRequest",
    "MomentGraphResponse",
    "PsiRequest",
    "PsiResponse",
    "GwRequest",
    "GwResponse",
    "QprodRequest",
    "QprodResponse",
    "CheckRelationRequest",
    "CheckRelationResponse",
    "ErrorBody",
    "ErrorResponse",
    "error_response",
    "error_kind",
    "handle_validate",
    "handle_moment_graph",
    "handle_psi",
    "handle_gw",
    "handle_qprod",
    "handle_check_relation",
]
