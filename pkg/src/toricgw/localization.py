"""Exact evaluation of fixed-point graph contributions.

Each decorated graph contributes a rational function of the torus
parameters; summed over all graphs for a curve class the result is a
constant.  Everything here is evaluated at a concrete integer point, so
values are plain Fractions and degenerate cancellations surface as
division by zero.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Iterator, Sequence

from .errors import DegenerateEvalPointError, InputError
from .fan import CohomClass
from .graphs import DecoratedGraph, SimpleGraphView
from .moment import EvalPoint, MomentGraph, evaluate, ev_weight

__all__ = [
    "Localizer",
    "lambda_edge",
    "vertex_factor",
    "root_vertex_factor",
    "fiber_psi_integral",
]


def lambda_edge(
    mg: MomentGraph, xi: EvalPoint, edge_index: int, h: int, at_point: int
) -> Fraction:
    """Edge contribution of a multiplicity-h cover, expanded at one endpoint.

    The prefactor is (-1)^h h^(2h) / ((h!)^2 w^(2h)) with w the tangent
    weight along the edge; each transverse direction contributes a run of
    equally spaced weight shifts whose length is the pairing of its
    divisor with the covered class (negative pairings flip the run into
    the numerator, empty runs contribute 1).
    """
    edge = mg.edges[edge_index]
    if at_point not in (edge.a, edge.b):
        raise ValueError("at_point must be an endpoint of the edge")
    fp = mg.points[at_point]
    far = edge.other(at_point)
    direction = fp.neighbors.index(far)
    values = tuple(evaluate(w, xi) for w in fp.weights)
    omega = values[direction]
    if omega == 0:
        raise DegenerateEvalPointError("zero tangent weight along an edge")
    out = Fraction((-1) ** h * h ** (2 * h), factorial(h) ** 2)
    out /= Fraction(omega) ** (2 * h)
    for j in range(len(values)):
        if j == direction:
            continue
        wj = values[j]
        lam = h * edge.curve_class[fp.rays[j]]
        if lam >= 0:
            for k in range(0, lam + 1):
                den = wj - Fraction(k, h) * omega
                if den == 0:
                    raise DegenerateEvalPointError("degenerate edge weight spacing")
                out /= den
        else:
            for k in range(lam + 1, 0):
                out *= wj - Fraction(k, h) * omega
    return out


def vertex_factor(
    euler: Fraction, flag_weights: Sequence[Fraction], n_marks: int, twist: int
) -> Fraction:
    """e(T)^(t-1) (sum 1/w)^(t+s-3-twist) / prod w for one graph vertex."""
    t = len(flag_weights)
    exponent = t + n_marks - 3 - twist
    total = Fraction(0)
    prod = Fraction(1)
    for w in flag_weights:
        if w == 0:
            raise DegenerateEvalPointError("zero flag weight")
        total += Fraction(1) / w
        prod *= w
    try:
        return euler ** (t - 1) * total ** exponent / prod
    except ZeroDivisionError as exc:
        raise DegenerateEvalPointError("vanishing flag weight sum") from exc


def _psi_monomial_integral(powers: Sequence[int]) -> Fraction:
    """Cotangent monomial over n-pointed stable rational curves; 0 off dimension."""
    n = len(powers)
    if n < 3 or sum(powers) != n - 3:
        return Fraction(0)
    den = 1
    for a in powers:
        den *= factorial(a)
    return Fraction(factorial(n - 3), den)


def _psi_kappa_integral(powers: tuple[int, ...], kappas: tuple[int, ...]) -> Fraction:
    """Mixed cotangent/kappa monomial integral in genus zero.

    Each kappa_c is the pushforward of psi^(c+1) at an extra point, so it
    trades for a new point carrying that power; the remaining kappas pick
    up the comparison correction kappa -> kappa - psi_new^c on the larger
    space, expanded here with inclusion-exclusion.
    """
    if not kappas:
        return _psi_monomial_integral(powers)
    c, rest = kappas[0], kappas[1:]
    total = Fraction(0)
    for bits in itertools.product((False, True), repeat=len(rest)):
        stay = tuple(k for k, b in zip(rest, bits) if not b)
        converted = [k for k, b in zip(rest, bits) if b]
        sign = -1 if len(converted) % 2 else 1
        total += sign * _psi_kappa_integral(
            powers + (c + 1 + sum(converted),), stay
        )
    return total


_FIBER_MEMO: dict[tuple, Fraction] = {}


def _fiber_rec(
    kept: tuple[tuple[int, int], ...],
    forgotten: tuple[int, ...],
    kappas: tuple[int, ...],
) -> Fraction:
    """Integral of a psi monomial against a class pulled back along forgetting.

    kept pairs a pulled-back exponent with an honest cotangent exponent at
    each surviving point; forgotten lists the honest exponents at the
    points the map drops.  Forgotten points are stripped one at a time:
    with no cotangent factor the string equation spreads the point over
    the remaining honest exponents, otherwise the pushforward leaves a
    kappa class behind.  Pulled-back exponents never interact until the
    map is exhausted and they merge with the honest ones.
    """
    key = (tuple(sorted(kept)), tuple(sorted(forgotten)), tuple(sorted(kappas)))
    cached = _FIBER_MEMO.get(key)
    if cached is not None:
        return cached
    if not forgotten:
        merged = tuple(g + h for g, h in kept)
        out = _psi_kappa_integral(merged, kappas)
    else:
        y, rest = forgotten[0], forgotten[1:]
        n = len(kept) + len(forgotten)
        out = Fraction(0)
        for bits in itertools.product((False, True), repeat=len(kappas)):
            stay = tuple(k for k, b in zip(kappas, bits) if not b)
            power = y + sum(k for k, b in zip(kappas, bits) if b)
            if power == 0:
                for i, (g, h) in enumerate(kept):
                    if h >= 1:
                        out += _fiber_rec(
                            kept[:i] + ((g, h - 1),) + kept[i + 1 :], rest, stay
                        )
                for j, h in enumerate(rest):
                    if h >= 1:
                        out += _fiber_rec(
                            kept, rest[:j] + (h - 1,) + rest[j + 1 :], stay
                        )
            elif power == 1:
                out += (n - 3) * _fiber_rec(kept, rest, stay)
            else:
                out += _fiber_rec(kept, rest, stay + (power - 1,))
    _FIBER_MEMO[key] = out
    return out


def fiber_psi_integral(
    own_marks: int,
    marked_powers: Sequence[int],
    unmarked_powers: Sequence[int],
) -> Fraction:
    """Cotangent monomial paired with the pullback of a point class.

    The moduli of the root component carries own_marks marked points, one
    flag per branch holding a single mark, and one flag per unmarked
    branch.  Forgetting the unmarked flags maps it onto the moduli of the
    marks alone; this evaluates psi powers at the flags against the
    pullback of a point under that map.  Marked flags survive the map and
    unmarked flags are forgotten, which breaks the symmetry between them.
    """
    m = own_marks + len(marked_powers)
    if m < 3:
        raise InputError("the point-class twist needs at least three marks")
    honest = tuple(marked_powers) + (0,) * own_marks
    pulled = (m - 3,) + (0,) * (m - 1)
    return _fiber_rec(tuple(zip(pulled, honest)), tuple(unmarked_powers), ())


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def root_vertex_factor(
    euler: Fraction, flags: Sequence[tuple[Fraction, bool]], own_marks: int
) -> Fraction:
    """e(T)^(t-1) times the root moduli integral of the point-class twist.

    flags pairs each flag weight with whether its branch holds a mark.
    Expanding every flag's 1/(w - psi) leaves cotangent monomials to pair
    with the pulled-back point class; their values depend on the split of
    flags into marked and unmarked, not just on the degree.
    """
    for w, _ in flags:
        if w == 0:
            raise DegenerateEvalPointError("zero flag weight")
    t = len(flags)
    n_unmarked = sum(1 for _, mk in flags if not mk)
    total = Fraction(0)
    for comp in _compositions(n_unmarked, t):
        coeff = fiber_psi_integral(
            own_marks,
            tuple(a for (_, mk), a in zip(flags, comp) if mk),
            tuple(a for (_, mk), a in zip(flags, comp) if not mk),
        )
        if coeff == 0:
            continue
        term = Fraction(coeff)
        for (w, _), a in zip(flags, comp):
            term /= w ** (a + 1)
        total += term
    return euler ** (t - 1) * total


class Localizer:
    """Caches per-evaluation-point data for one moment graph.

    orientation picks the endpoint at which edge factors are expanded;
    totals agree for both choices, which the test suite exercises.
    """

    def __init__(self, mg: MomentGraph, point: EvalPoint, orientation: str = "low"):
        if orientation not in ("low", "high"):
            raise ValueError("orientation must be 'low' or 'high'")
        self.mg = mg
        self.point = point
        self.orientation = orientation
        self._tangent: dict[int, tuple[Fraction, ...]] = {}
        self._euler: dict[int, Fraction] = {}
        self._edge: dict[tuple[int, int], Fraction] = {}
        self._ev: dict[tuple[int, tuple], Fraction] = {}

    def tangent(self, fp_index: int) -> tuple[Fraction, ...]:
        cached = self._tangent.get(fp_index)
        if cached is None:
            fp = self.mg.points[fp_index]
            cached = tuple(evaluate(w, self.point) for w in fp.weights)
            self._tangent[fp_index] = cached
        return cached

    def euler(self, fp_index: int) -> Fraction:
        cached = self._euler.get(fp_index)
        if cached is None:
            cached = Fraction(1)
            for w in self.tangent(fp_index):
                cached *= w
            self._euler[fp_index] = cached
        return cached

    def ev_value(self, cls: CohomClass, fp_index: int) -> Fraction:
        key = (fp_index, cls.terms)
        cached = self._ev.get(key)
        if cached is None:
            cached = Fraction(0)
            for monomial, coeff in cls.terms:
                term = Fraction(coeff)
                for ray, exp in enumerate(monomial):
                    if exp == 0:
                        continue
                    w = ev_weight(self.mg, fp_index, ray)
                    if w is None:
                        term = Fraction(0)
                        break
                    term *= evaluate(w, self.point) ** exp
                cached += term
            self._ev[key] = cached
        return cached

    def edge_factor(self, edge_index: int, h: int) -> Fraction:
        """Euler-class contribution of an edge covered with multiplicity h."""
        key = (edge_index, h)
        cached = self._edge.get(key)
        if cached is None:
            edge = self.mg.edges[edge_index]
            at = edge.a if self.orientation == "low" else edge.b
            cached = lambda_edge(self.mg, self.point, edge_index, h, at)
            self._edge[key] = cached
        return cached

    def flag_weights(self, graph: DecoratedGraph, v: int) -> list[Fraction]:
        fp = self.mg.points[graph.labels[v]]
        out = []
        for nb, (_, _, ei, h) in graph.neighbors(v):
            w = evaluate(fp.weight_toward(graph.labels[nb]), self.point)
            out.append(Fraction(w, h))
        return out

    def vertex_factor(self, graph: DecoratedGraph, v: int, twist: int) -> Fraction:
        flags = self.flag_weights(graph, v)
        return vertex_factor(
            self.euler(graph.labels[v]), flags, len(graph.marks[v]), twist
        )

    def graph_contribution(
        self,
        graph: DecoratedGraph,
        insertions: tuple[CohomClass, ...],
        view: SimpleGraphView | None,
    ) -> Fraction:
        """Full contribution of one graph, including 1/|A|.

        view names the stable vertex of a simple graph in twisted mode,
        where the contribution is normalized against the point class; in
        the untwisted mode it is None and every vertex integral is the
        plain cotangent expansion.
        """
        value = Fraction(1)
        mark_vertex: dict[int, int] = {}
        for v, ms in enumerate(graph.marks):
            for j in ms:
                mark_vertex[j] = v
        for j, cls in enumerate(insertions, start=1):
            ev = self.ev_value(cls, graph.labels[mark_vertex[j]])
            if ev == 0:
                return Fraction(0)
            value *= ev
        for _, _, ei, h in graph.edges:
            value *= self.edge_factor(ei, h)
        root = view.root if view is not None else None
        for v in range(graph.n_vertices):
            if v == root:
                flags = [
                    (w, view.branch_marks[i] == 1)
                    for i, w in enumerate(self.flag_weights(graph, v))
                ]
                value *= root_vertex_factor(
                    self.euler(graph.labels[v]), flags, len(graph.marks[v])
                )
            else:
                value *= self.vertex_factor(graph, v, 0)
        order = graph.graph_autos * graph.multiplicity_product()
        return value / order
