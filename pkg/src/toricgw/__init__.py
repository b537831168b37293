"""Exact genus-zero Gromov-Witten invariants of smooth projective toric
varieties, computed by summing fixed-point graph contributions.

The moment graph of the fan drives everything: decorated trees on it are
enumerated up to isomorphism, each contributes a rational function of the
torus parameters, and the total is an exact rational number recovered by
evaluation at two independent integer points.  On top of the invariants
sit cotangent-line twists, the point-class normalization used for
multi-factor products, and truncated small quantum products with
coefficientwise relation checking.
"""
from .catalog import (
    hirzebruch,
    list_fans,
    load_fan,
    product_of_lines,
    proj_bundle,
    projective_line,
    projective_space,
    shipped_fans,
)
from .errors import (
    ConsistencyError,
    DegenerateEvalPointError,
    FanError,
    InputError,
    ResourceBudgetError,
    ToricGWError,
)
from .fan import (
    CohomClass,
    Fan,
    FanReport,
    format_rational,
    is_curve_class,
    parse_fan,
    parse_rational,
)
from .graphs import DecoratedGraph, SimpleGraphView, enumerate_graphs, is_simple
from .invariants import (
    InvariantResult,
    class_support,
    default_dvec,
    gw_invariant,
    pd_point_invariant,
    psi_intersection,
    virtual_dim_gap,
    virtual_dim_ok,
)
from .localization import (
    Localizer,
    fiber_psi_integral,
    lambda_edge,
    root_vertex_factor,
    vertex_factor,
)
from .moment import MomentGraph, build_moment_graph, generate_eval_point
from .quantum import (
    InvariantCache,
    PairingTable,
    QuantumPoly,
    RelationReport,
    build_pairing,
    check_relation,
    minimal_generators,
    poly_star,
    quantum_multi_product,
    star_product,
    unit_poly,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ToricGWError",
    "FanError",
    "InputError",
    "DegenerateEvalPointError",
    "ResourceBudgetError",
    "ConsistencyError",
    "Fan",
    "FanReport",
    "CohomClass",
    "parse_fan",
    "parse_rational",
    "format_rational",
    "is_curve_class",
    "shipped_fans",
    "load_fan",
    "list_fans",
    "projective_space",
    "projective_line",
    "product_of_lines",
    "hirzebruch",
    "proj_bundle",
    "MomentGraph",
    "build_moment_graph",
    "generate_eval_point",
    "DecoratedGraph",
    "SimpleGraphView",
    "enumerate_graphs",
    "is_simple",
    "Localizer",
    "fiber_psi_integral",
    "lambda_edge",
    "root_vertex_factor",
    "vertex_factor",
    "InvariantResult",
    "class_support",
    "psi_intersection",
    "default_dvec",
    "virtual_dim_gap",
    "virtual_dim_ok",
    "gw_invariant",
    "pd_point_invariant",
    "PairingTable",
    "QuantumPoly",
    "RelationReport",
    "InvariantCache",
    "build_pairing",
    "minimal_generators",
    "star_product",
    "quantum_multi_product",
    "poly_star",
    "unit_poly",
    "check_relation",
]
