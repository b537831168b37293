"""Fixed points, tangent weights, and the wall graph of a smooth complete fan.

Each maximal cone is a torus fixed point.  Writing the cone's rays as the
rows of a matrix M, the rows of (M^T)^{-1} are the tangent weights: the
j-th weight pairs to 1 with the j-th ray and to 0 with the others, and it
is the weight of the invariant curve direction across the facet that omits
that ray.  Walls (shared facets) become edges decorated with the curve
class of the invariant sphere joining the two fixed points.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._linalg import invert_unimodular, solve_rational
from .errors import DegenerateEvalPointError, FanError
from .fan import CurveClass, Fan

__all__ = [
    "Weight",
    "FixedPoint",
    "MomentEdge",
    "MomentGraph",
    "EvalPoint",
    "build_moment_graph",
    "edge_class",
    "ev_weight",
    "evaluate",
    "generate_eval_point",
    "EVAL_COORD_SPAN",
]

Weight = tuple[int, ...]

EVAL_COORD_SPAN = 10**6


@dataclass(frozen=True)
class FixedPoint:
    """A maximal cone with its dual-basis tangent data.

    weights[j] is the tangent weight of the invariant direction toward
    neighbors[j], the cone across the facet omitting rays[j].
    """

    index: int
    rays: tuple[int, ...]
    weights: tuple[Weight, ...]
    neighbors: tuple[int, ...]

    def weight_toward(self, neighbor: int) -> Weight:
        return self.weights[self.neighbors.index(neighbor)]


@dataclass(frozen=True)
class MomentEdge:
    """A wall between fixed points a < b, carrying its curve class."""

    index: int
    a: int
    b: int
    wall: tuple[int, ...]
    extra_a: int
    extra_b: int
    curve_class: CurveClass
    weight_a: Weight
    weight_b: Weight

    def other(self, point: int) -> int:
        return self.b if point == self.a else self.a

    def weight_at(self, point: int) -> Weight:
        if point == self.a:
            return self.weight_a
        if point == self.b:
            return self.weight_b
        raise ValueError(f"edge {self.a}-{self.b} does not touch point {point}")


@dataclass(frozen=True)
class MomentGraph:
    fan: Fan
    points: tuple[FixedPoint, ...]
    edges: tuple[MomentEdge, ...]

    def edge_between(self, a: int, b: int) -> MomentEdge:
        key = (min(a, b), max(a, b))
        for e in self.edges:
            if (e.a, e.b) == key:
                return e
        raise KeyError(f"no wall between cones {a} and {b}")

    def edges_at(self, point: int) -> list[MomentEdge]:
        return [e for e in self.edges if point in (e.a, e.b)]

    def distinct_edge_classes(self) -> list[CurveClass]:
        return sorted({e.curve_class for e in self.edges})


def edge_class(fan: Fan, cone_a: Sequence[int], cone_b: Sequence[int]) -> CurveClass:
    """Curve class of the wall shared by two adjacent maximal cones.

    The class is the intersection vector fixed by the relation
    v_extra_a + v_extra_b + sum_i c_i * v_i = 0 over the wall rays: both
    extra rays get 1, wall ray i gets c_i, all other rays get 0.
    """
    set_a, set_b = set(cone_a), set(cone_b)
    wall = sorted(set_a & set_b)
    only_a, only_b = sorted(set_a - set_b), sorted(set_b - set_a)
    if len(wall) != fan.dim - 1 or len(only_a) != 1 or len(only_b) != 1:
        raise FanError(f"cones {sorted(set_a)} and {sorted(set_b)} do not share a facet")
    ea, eb = only_a[0], only_b[0]
    target = [-(fan.rays[ea][k] + fan.rays[eb][k]) for k in range(fan.dim)]
    matrix = [[fan.rays[i][k] for i in wall] for k in range(fan.dim)]
    coeffs = solve_rational(matrix, target)
    if coeffs is None or any(c.denominator != 1 for c in coeffs):
        raise FanError(f"wall {wall} has no integral curve class; fan is not smooth there")
    entries = [0] * fan.n_rays
    entries[ea] = 1
    entries[eb] = 1
    for i, c in zip(wall, coeffs):
        entries[i] = int(c)
    return tuple(entries)


def build_moment_graph(fan: Fan) -> MomentGraph:
    """Assemble fixed points and decorated walls; the fan must validate."""
    fan.require_valid()

    facet_map = fan.facets()

    points: list[FixedPoint] = []
    for ci, cone in enumerate(fan.max_cones):
        matrix = [[fan.rays[i][k] for k in range(fan.dim)] for i in cone]
        transpose = [[matrix[i][k] for i in range(fan.dim)] for k in range(fan.dim)]
        weights = invert_unimodular(transpose)
        neighbors = []
        for j in range(fan.dim):
            facet = tuple(i for i in cone if i != cone[j])
            pair = facet_map[facet]
            neighbors.append(pair[0] if pair[1] == ci else pair[1])
        points.append(FixedPoint(ci, cone, tuple(weights), tuple(neighbors)))

    edges: list[MomentEdge] = []
    for facet, pair in sorted(facet_map.items()):
        a, b = sorted(pair)
        if (a, b) in {(e.a, e.b) for e in edges}:
            continue
        cone_a, cone_b = fan.max_cones[a], fan.max_cones[b]
        extra_a = next(i for i in cone_a if i not in facet)
        extra_b = next(i for i in cone_b if i not in facet)
        cls = edge_class(fan, cone_a, cone_b)
        weight_a = points[a].weights[cone_a.index(extra_a)]
        weight_b = points[b].weights[cone_b.index(extra_b)]
        if any(x + y != 0 for x, y in zip(weight_a, weight_b)):
            raise FanError(f"wall {facet}: tangent weights are not opposite; fan is broken")
        edges.append(
            MomentEdge(len(edges), a, b, facet, extra_a, extra_b, cls, weight_a, weight_b)
        )

    return MomentGraph(fan, tuple(points), tuple(edges))


def ev_weight(mg: MomentGraph, point: int, ray: int) -> Weight | None:
    """Weight of the ray divisor at a fixed point, None when the point misses it.

    A divisor passes through a fixed point exactly when its ray belongs to
    the cone; the equivariant restriction there is the tangent weight dual
    to that ray.
    """
    fp = mg.points[point]
    if ray not in fp.rays:
        return None
    return fp.weights[fp.rays.index(ray)]


def evaluate(weight: Weight, xi: "EvalPoint | Sequence[int]") -> int:
    """Pair an integer weight vector with an evaluation point."""
    coords = xi.coords if isinstance(xi, EvalPoint) else xi
    return sum(w * x for w, x in zip(weight, coords))


@dataclass(frozen=True)
class EvalPoint:
    """A deterministic pseudo-random specialization of the torus parameters."""

    coords: tuple[int, ...]
    seed: int


def generate_eval_point(mg: MomentGraph, seed: int) -> EvalPoint:
    """First evaluation point at or after `seed` passing the genericity checks.

    The checks certify that every tangent weight and every difference of
    distinct tangent weights at a common fixed point evaluates to a nonzero
    integer.  Rarer degeneracies are caught downstream as zero denominators
    and answered by regenerating from the next seed.
    """
    attempt = seed
    while True:
        rng = random.Random(attempt)
        coords = tuple(rng.randint(-EVAL_COORD_SPAN, EVAL_COORD_SPAN) for _ in range(mg.fan.dim))
        if _generic_enough(mg, coords):
            return EvalPoint(coords, attempt)
        attempt += 1


def _generic_enough(mg: MomentGraph, coords: tuple[int, ...]) -> bool:
    for fp in mg.points:
        values = [evaluate(w, coords) for w in fp.weights]
        if any(v == 0 for v in values):
            return False
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                if values[i] == values[j]:
                    return False
    return True


def require_nonzero(value: Fraction | int, what: str) -> None:
    """Raise the retryable degeneracy signal when a denominator vanishes."""
    if value == 0:
        raise DegenerateEvalPointError(what)
