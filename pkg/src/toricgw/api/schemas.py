"""Pydantic models shared by the HTTP service and the command line.

Fans and insertion classes travel as plain JSON values and are parsed by
the core library, so a malformed fan is reported by the domain error
machinery instead of a schema validation stack trace.  All rationals are
strings "p/q" in lowest terms with positive denominator.
"""
from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field

MAX_SEED = 2**64 - 1


class ValidateRequest(BaseModel):
    fan: Any = Field(description="fan as a JSON object or raw JSON text")


class CheckItem(BaseModel):
    name: str
    passed: bool
    detail: str


class ValidateResponse(BaseModel):
    passed: bool
    checks: list[CheckItem] = []
    error: str | None = None
    dim: int | None = None
    n_rays: int | None = None
    n_max_cones: int | None = None


class MomentGraphRequest(BaseModel):
    fan: Any


class FixedPointModel(BaseModel):
    index: int
    rays: list[int]
    weights: list[list[int]]
    neighbors: list[int]


class MomentEdgeModel(BaseModel):
    index: int
    points: list[int]
    wall: list[int]
    curve_class: list[int]
    weight_at_a: list[int]
    weight_at_b: list[int]


class MomentGraphResponse(BaseModel):
    n_points: int
    n_edges: int
    points: list[FixedPointModel]
    edges: list[MomentEdgeModel]


class PsiRequest(BaseModel):
    m: int = Field(ge=3)
    d: list[int]


class PsiResponse(BaseModel):
    value: str


class GwRequest(BaseModel):
    fan: Any
    curve_class: list[int]
    insertions: list[Any] = Field(
        description="one class per mark: an exponent vector or a term list"
    )
    psi: list[int] | None = None
    pd_point: bool = False
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    jobs: int = Field(default=1, ge=1)
    check_independence: bool = True
    dump_graphs: bool = False
    trace: bool = False


class GraphLine(BaseModel):
    graph: str
    vertices: list[dict]
    edges: list[dict]


class TraceLine(BaseModel):
    graph: str
    contribution: str


class GwResponse(BaseModel):
    invariant: str
    mode: str
    n_graphs: int
    seeds: list[int]
    graphs: list[GraphLine] | None = None
    trace: list[TraceLine] | None = None


class QprodRequest(BaseModel):
    fan: Any
    factors: list[Any] = Field(min_length=2)
    caps: list[int]
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    jobs: int = Field(default=1, ge=1)


class ClassTerm(BaseModel):
    monomial: list[int]
    coeff: str


class QTerm(BaseModel):
    q_exponents: list[int]
    coords: list[str]
    cls: list[ClassTerm] = Field(alias="class")

    model_config = {"populate_by_name": True}


class QprodResponse(BaseModel):
    generators: list[list[int]]
    caps: list[int]
    basis: list[dict]
    terms: list[QTerm]


class CheckRelationRequest(BaseModel):
    fan: Any
    lhs: list[Any] = []
    rhs: list[Any] = []
    lhs_shift: list[int] | None = None
    rhs_shift: list[int] | None = None
    caps: list[int]
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    jobs: int = Field(default=1, ge=1)


class RelationTerm(BaseModel):
    q_exponents: list[int]
    lhs: list[ClassTerm]
    rhs: list[ClassTerm]
    equal: bool


class CheckRelationResponse(BaseModel):
    passed: bool
    caps: list[int]
    generators: list[list[int]]
    terms: list[RelationTerm]


ErrorKind = Literal["fan", "input", "consistency", "budget", "degenerate", "internal"]


class ErrorBody(BaseModel):
    kind: ErrorKind
    message: str


class ErrorResponse(BaseModel):
    error: ErrorBody


def error_response(kind: ErrorKind, message: str) -> ErrorResponse:
    return ErrorResponse(error=ErrorBody(kind=kind, message=message))
