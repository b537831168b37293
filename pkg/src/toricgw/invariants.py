"""Genus-zero invariant computation with exact cross-checked evaluation.

Every invariant is a sum of graph contributions, each a rational function
of the torus parameters whose total is a constant.  We evaluate at two
independently seeded integer points and require agreement, so a silent
cancellation error cannot survive.
"""
from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Sequence

from .errors import ConsistencyError, DegenerateEvalPointError, InputError
from .fan import CohomClass, CurveClass, Fan, is_curve_class
from .graphs import DecoratedGraph, SimpleGraphView, enumerate_graphs, is_simple
from .localization import Localizer
from .moment import EvalPoint, MomentGraph, build_moment_graph, generate_eval_point

__all__ = [
    "InvariantResult",
    "psi_intersection",
    "virtual_dim_gap",
    "virtual_dim_ok",
    "class_support",
    "gw_invariant",
    "pd_point_invariant",
    "default_dvec",
]

MAX_EVAL_ATTEMPTS = 10


def psi_intersection(n_marks: int, dvec: Sequence[int]) -> int:
    """Integral of a cotangent-line monomial over the space of stable curves.

    Requires sum(dvec) == n_marks - 3; the value is the multinomial
    (n_marks - 3)! / prod(d_i!).
    """
    _check_dvec(n_marks, dvec)
    if n_marks < 3:
        raise InputError("cotangent integrals need at least three marks")
    if sum(dvec) != n_marks - 3:
        raise InputError(
            f"cotangent exponents sum to {sum(dvec)}; "
            f"dimension requires {n_marks - 3}"
        )
    out = factorial(n_marks - 3)
    for d in dvec:
        out //= factorial(d)
    return out


def _check_dvec(n_marks: int, dvec: Sequence[int]) -> None:
    if len(dvec) != n_marks:
        raise InputError("dvec must have one entry per mark")
    for d in dvec:
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise InputError(f"cotangent exponents must be non-negative integers, got {d!r}")


def default_dvec(n_marks: int) -> tuple[int, ...]:
    """The canonical twist vector: all cotangent weight on the first mark."""
    if n_marks < 3:
        raise InputError("point-normalized invariants need at least three marks")
    return (n_marks - 3,) + (0,) * (n_marks - 1)


def virtual_dim_gap(
    fan: Fan,
    insertions: Sequence[CohomClass],
    dvec: Sequence[int],
    curve_class: CurveClass,
) -> int:
    """Insertion degree plus twist minus the dimension of the moduli space.

    The invariant vanishes unless this is zero.
    """
    total = sum(dvec)
    for cls in insertions:
        total += cls.degree()
    dim = fan.dim + sum(curve_class) + len(insertions) - 3
    return total - dim


def virtual_dim_ok(
    fan: Fan,
    curve_class: CurveClass,
    insertions: Sequence[CohomClass],
    dvec: Sequence[int],
) -> bool:
    """Whether the insertions saturate the moduli dimension exactly."""
    return virtual_dim_gap(fan, insertions, dvec, curve_class) == 0


def class_support(fan: Fan, cls: CohomClass) -> frozenset[int]:
    """Cones where the class can restrict to something nonzero.

    A monomial evaluates to zero at every fixed point whose cone misses one
    of its rays, so marks carrying the class only matter on these cones.
    """
    out = set()
    for idx, cone in enumerate(fan.max_cones):
        rays = set(cone)
        for monomial, _ in cls.terms:
            if all(r in rays for r, e in enumerate(monomial) if e > 0):
                out.add(idx)
                break
    return frozenset(out)


@dataclass(frozen=True)
class InvariantResult:
    """An exact invariant value together with how it was computed."""

    value: Fraction
    n_graphs: int
    seeds: tuple[int, int]
    mode: str
    elapsed: float

    def to_payload(self) -> dict:
        return {
            "value": _format_fraction(self.value),
            "n_graphs": self.n_graphs,
            "seeds": list(self.seeds),
            "mode": self.mode,
            "elapsed": self.elapsed,
        }


def _format_fraction(x: Fraction) -> str:
    return str(x)


def _select_mode(n_marks: int, dvec: tuple[int, ...]) -> str:
    total = sum(dvec)
    if total == 0:
        return "classical"
    if total == n_marks - 3:
        return "twisted"
    raise InputError(
        f"cotangent exponents must sum to 0 or n_marks - 3; got {total} with {n_marks} marks"
    )


def gw_invariant(
    mg: MomentGraph,
    curve_class: CurveClass,
    insertions: Sequence[CohomClass],
    dvec: Sequence[int] | None = None,
    *,
    seed: int = 0,
    jobs: int = 1,
    check_independence: bool = True,
    max_edge_multiplicity: int | None = None,
    budget: int | None = 10_000_000,
    trace_sink: list | None = None,
) -> InvariantResult:
    """Genus-zero invariant, optionally twisted by cotangent-line classes.

    Untwisted calls sum over all decorated graphs; calls with twists
    summing to n_marks - 3 sum over the graphs with a stable root vertex.
    The result is exact; evaluation happens at two random points whose
    values must agree unless check_independence is disabled.

    trace_sink, when given, collects (graph, contribution) pairs from the
    successful attempt; contributions are summands of the pre-scaling
    total at the first evaluation point.  Tracing forces serial execution.
    """
    t0 = time.perf_counter()
    fan = mg.fan
    A = tuple(curve_class)
    if not is_curve_class(fan, A):
        raise InputError(f"{list(A)} is not a curve class for this fan")
    ins = tuple(insertions)
    for cls in ins:
        if not isinstance(cls, CohomClass) or cls.n_rays != fan.n_rays:
            raise InputError("insertions must be cohomology classes on the same fan")
    m = len(ins)
    d = tuple(dvec) if dvec is not None else (0,) * m
    _check_dvec(m, d)
    mode = _select_mode(m, d)

    if any(cls.is_zero() for cls in ins):
        return InvariantResult(Fraction(0), 0, (seed, seed), mode, time.perf_counter() - t0)
    if virtual_dim_gap(fan, ins, d, A) != 0:
        return InvariantResult(
            Fraction(0), 0, (seed, seed), "dimension", time.perf_counter() - t0
        )

    support = [class_support(fan, cls) for cls in ins]
    simple_only = mode == "twisted"

    last_error: Exception | None = None
    for attempt in range(MAX_EVAL_ATTEMPTS):
        s1 = seed + 2 * attempt
        s2 = seed + 2 * attempt + 1
        p1 = generate_eval_point(mg, s1)
        p2 = generate_eval_point(mg, s2)
        if p1.coords == p2.coords:
            continue
        graphs = enumerate_graphs(
            mg,
            A,
            m,
            simple_only=simple_only,
            mark_support=support,
            max_edge_multiplicity=max_edge_multiplicity,
            budget=budget,
        )
        try:
            if trace_sink is not None:
                trace_sink.clear()
                v1, v2, count = _sum_serial(
                    mg, p1, p2, ins, simple_only, graphs, trace_sink
                )
            elif jobs > 1:
                v1, v2, count = _sum_parallel(mg, p1, p2, ins, simple_only, graphs, jobs)
            else:
                v1, v2, count = _sum_serial(mg, p1, p2, ins, simple_only, graphs)
        except (DegenerateEvalPointError, ZeroDivisionError) as exc:
            last_error = exc
            continue
        if check_independence and v1 != v2:
            raise ConsistencyError(
                f"evaluation points disagree: {v1} (seed {s1}) vs {v2} (seed {s2})"
            )
        if mode == "twisted":
            # graph sums are normalized against the point class; the stated
            # twist rescales by its cotangent integral
            v1 *= psi_intersection(m, d)
        return InvariantResult(v1, count, (s1, s2), mode, time.perf_counter() - t0)
    raise DegenerateEvalPointError(
        f"no usable evaluation points after {MAX_EVAL_ATTEMPTS} attempts"
    ) from last_error


def _stable_view(graph: DecoratedGraph, simple_only: bool) -> SimpleGraphView | None:
    if not simple_only:
        return None
    view = is_simple(graph)
    if view is None:
        raise ConsistencyError("twisted enumeration produced a graph without a root")
    return view


def _sum_serial(
    mg: MomentGraph,
    p1: EvalPoint,
    p2: EvalPoint,
    ins: tuple[CohomClass, ...],
    simple_only: bool,
    graphs: Iterable[DecoratedGraph],
    trace_sink: list | None = None,
) -> tuple[Fraction, Fraction, int]:
    loc1 = Localizer(mg, p1)
    loc2 = Localizer(mg, p2)
    v1 = Fraction(0)
    v2 = Fraction(0)
    count = 0
    for graph in graphs:
        count += 1
        view = _stable_view(graph, simple_only)
        c1 = loc1.graph_contribution(graph, ins, view)
        v1 += c1
        v2 += loc2.graph_contribution(graph, ins, view)
        if trace_sink is not None:
            trace_sink.append((graph, c1))
    return v1, v2, count


_WORKER_STATE: dict = {}


def _init_worker(mg, p1, p2, ins, simple_only) -> None:
    _WORKER_STATE["loc1"] = Localizer(mg, p1)
    _WORKER_STATE["loc2"] = Localizer(mg, p2)
    _WORKER_STATE["args"] = (ins, simple_only)


def _eval_chunk(graphs: list[DecoratedGraph]) -> tuple[Fraction, Fraction, int]:
    loc1 = _WORKER_STATE["loc1"]
    loc2 = _WORKER_STATE["loc2"]
    ins, simple_only = _WORKER_STATE["args"]
    v1 = Fraction(0)
    v2 = Fraction(0)
    for graph in graphs:
        view = _stable_view(graph, simple_only)
        v1 += loc1.graph_contribution(graph, ins, view)
        v2 += loc2.graph_contribution(graph, ins, view)
    return v1, v2, len(graphs)


def _chunked(graphs: Iterator[DecoratedGraph], size: int) -> Iterator[list[DecoratedGraph]]:
    chunk: list[DecoratedGraph] = []
    for g in graphs:
        chunk.append(g)
        if len(chunk) >= size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def _sum_parallel(
    mg: MomentGraph,
    p1: EvalPoint,
    p2: EvalPoint,
    ins: tuple[CohomClass, ...],
    simple_only: bool,
    graphs: Iterable[DecoratedGraph],
    jobs: int,
) -> tuple[Fraction, Fraction, int]:
    ctx = multiprocessing.get_context()
    with ctx.Pool(
        jobs, initializer=_init_worker, initargs=(mg, p1, p2, ins, simple_only)
    ) as pool:
        v1 = Fraction(0)
        v2 = Fraction(0)
        count = 0
        for c1, c2, n in pool.imap_unordered(_eval_chunk, _chunked(iter(graphs), 512)):
            v1 += c1
            v2 += c2
            count += n
    return v1, v2, count


def pd_point_invariant(
    mg: MomentGraph,
    curve_class: CurveClass,
    insertions: Sequence[CohomClass],
    dvec: Sequence[int] | None = None,
    *,
    seed: int = 0,
    jobs: int = 1,
    check_independence: bool = True,
    max_edge_multiplicity: int | None = None,
    budget: int | None = 10_000_000,
    trace_sink: list | None = None,
) -> InvariantResult:
    """Invariant twisted by the point class, normalized to be twist-independent.

    Divides the twisted invariant by the corresponding cotangent integral;
    the quotient does not depend on how the twist is distributed over the
    marks.  With the default twist the divisor is 1.
    """
    m = len(insertions)
    d = tuple(dvec) if dvec is not None else default_dvec(m)
    _check_dvec(m, d)
    if sum(d) != m - 3:
        raise InputError("point-normalized twists must sum to n_marks - 3")
    raw = gw_invariant(
        mg,
        curve_class,
        insertions,
        d,
        seed=seed,
        jobs=jobs,
        check_independence=check_independence,
        max_edge_multiplicity=max_edge_multiplicity,
        budget=budget,
        trace_sink=trace_sink,
    )
    norm = psi_intersection(m, d)
    return InvariantResult(
        raw.value / norm, raw.n_graphs, raw.seeds, raw.mode, raw.elapsed
    )
