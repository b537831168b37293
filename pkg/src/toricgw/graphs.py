"""Enumeration of decorated fixed-point graphs for a curve class.

A decorated graph is a tree whose vertices carry fixed points of the
moment graph and whose edges carry walls with covering multiplicities;
the marks 1..m are distributed over the vertices.  Adjacent vertices map
to adjacent fixed points, and the multiplicity-weighted wall classes sum
to the requested curve class.  Graphs are produced exactly once up to
isomorphism, in a deterministic order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InputError, ResourceBudgetError
from .fan import CurveClass
from .moment import MomentGraph

__all__ = [
    "DecoratedGraph",
    "SimpleGraphView",
    "enumerate_graphs",
    "automorphism_order",
    "is_simple",
    "positivity_certificate",
    "decompose_class",
]

GraphEdge = tuple[int, int, int, int]


@dataclass(frozen=True)
class DecoratedGraph:
    """A marked tree over the moment graph.

    edges entries are (u, v, wall_index, multiplicity) with u < v; marks[v]
    is the sorted tuple of mark labels sitting at vertex v.  graph_autos is
    the order of the automorphism group of the marked, decorated tree.
    """

    labels: tuple[int, ...]
    edges: tuple[GraphEdge, ...]
    marks: tuple[tuple[int, ...], ...]
    graph_autos: int = 1

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_marks(self) -> int:
        return sum(len(ms) for ms in self.marks)

    def valence(self, v: int) -> int:
        return sum(1 for u, w, _, _ in self.edges if v in (u, w))

    def degree(self, v: int) -> int:
        """Special points on the vertex component: flags plus marks."""
        return self.valence(v) + len(self.marks[v])

    def neighbors(self, v: int) -> list[tuple[int, GraphEdge]]:
        out = []
        for edge in self.edges:
            u, w, _, _ = edge
            if u == v:
                out.append((w, edge))
            elif w == v:
                out.append((u, edge))
        return out

    def total_class(self, mg: MomentGraph) -> CurveClass:
        n = mg.fan.n_rays
        acc = [0] * n
        for _, _, ei, h in self.edges:
            cls = mg.edges[ei].curve_class
            for k in range(n):
                acc[k] += h * cls[k]
        return tuple(acc)

    def multiplicity_product(self) -> int:
        out = 1
        for _, _, _, h in self.edges:
            out *= h
        return out

    def key(self) -> tuple:
        """Canonical isomorphism-invariant encoding (centroid-rooted)."""
        return _canonical_key(self.labels, self.edges, self.marks)

    def to_payload(self, mg: MomentGraph) -> dict:
        return {
            "vertices": [
                {"fixed_point": lab, "marks": list(ms)}
                for lab, ms in zip(self.labels, self.marks)
            ],
            "edges": [
                {
                    "vertices": [u, v],
                    "wall": list(mg.edges[ei].wall),
                    "multiplicity": h,
                }
                for u, v, ei, h in self.edges
            ],
        }


@dataclass(frozen=True)
class SimpleGraphView:
    """A decorated graph with its unique stable root vertex.

    branch_marks[i] counts the marks on the branch hanging off the root's
    i-th neighbor, in neighbors() order.
    """

    graph: DecoratedGraph
    root: int
    branch_marks: tuple[int, ...]


def is_simple(graph: DecoratedGraph) -> SimpleGraphView | None:
    """Locate the unique stable vertex whose branches carry at most one mark.

    Contracting every branch with at most one mark leaves a single
    component with all marks on it; graphs without such a vertex push
    their marks onto at least two surviving components instead and do not
    dominate the full space of cross-ratios.
    """
    candidates = []
    for r in range(graph.n_vertices):
        if graph.degree(r) < 3:
            continue
        counts = tuple(
            _branch_mark_count(graph, r, nb) for nb, _ in graph.neighbors(r)
        )
        if all(c <= 1 for c in counts):
            candidates.append((r, counts))
    if len(candidates) != 1:
        return None
    root, counts = candidates[0]
    return SimpleGraphView(graph, root, counts)


def _branch_mark_count(graph: DecoratedGraph, root: int, branch_head: int) -> int:
    total = 0
    stack = [(branch_head, root)]
    while stack:
        v, parent = stack.pop()
        total += len(graph.marks[v])
        for nb, _ in graph.neighbors(v):
            if nb != parent:
                stack.append((nb, v))
    return total


def automorphism_order(graph: DecoratedGraph) -> int:
    """Order of the stabilizer group |Aut| times the product of multiplicities.

    Aut permutes vertices preserving fixed-point labels, decorated edges,
    and mark sets; each multiplicity-h edge additionally contributes the
    deck transformations of the h-fold cover.
    """
    autos = 0
    for perm in _decorated_tree_automorphisms(graph.labels, graph.edges):
        if all(graph.marks[perm[v]] == graph.marks[v] for v in range(graph.n_vertices)):
            autos += 1
    return autos * graph.multiplicity_product()


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def step(self, amount: int = 1) -> None:
        self.used += amount
        if self.limit is not None and self.used > self.limit:
            raise ResourceBudgetError(f"graph enumeration exceeded {self.limit} steps")


def positivity_certificate(mg: MomentGraph) -> tuple[int, ...] | None:
    """A small integer vector pairing strictly positively with every wall class.

    Such a functional exists whenever the fan is projective and bounds
    every decomposition of a curve class into wall classes.  The search is
    deterministic: increasing total size, then lexicographic.
    """
    classes = mg.distinct_edge_classes()
    if not classes:
        return None
    n = mg.fan.n_rays
    for total in range(1, 3 * n + 1):
        for w in _compositions(total, n, cap=3):
            if all(sum(wi * ci for wi, ci in zip(w, cls)) >= 1 for cls in classes):
                return w
    return None


def _compositions(total: int, parts: int, cap: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if total <= cap:
            yield (total,)
        return
    for first in range(min(total, cap) + 1):
        for rest in _compositions(total - first, parts - 1, cap):
            yield (first,) + rest


def decompose_class(
    mg: MomentGraph,
    curve_class: CurveClass,
    max_edge_multiplicity: int | None = None,
    budget: _Budget | None = None,
) -> list[tuple[tuple[int, int], ...]]:
    """All multisets of (wall index, multiplicity) parts summing to the class.

    Each part will become one tree edge.  Without a positivity certificate
    the caller must bound the search with max_edge_multiplicity.
    """
    guard = budget or _Budget(None)
    n = mg.fan.n_rays
    cert = positivity_certificate(mg)
    if cert is None and max_edge_multiplicity is None:
        raise InputError(
            "no positivity certificate found for this fan; "
            "set max_edge_multiplicity to bound the search"
        )

    def phi(vec: Sequence[int]) -> int:
        return sum(w * x for w, x in zip(cert, vec))

    results: list[tuple[tuple[int, int], ...]] = []

    def rec(edge_pos: int, remaining: list[int], acc: list[tuple[int, int]]) -> None:
        guard.step()
        if all(x == 0 for x in remaining):
            results.append(tuple(acc))
            if cert is not None:
                return
        if edge_pos == len(mg.edges):
            return
        edge = mg.edges[edge_pos]
        cls = edge.curve_class
        if cert is not None:
            room = phi(remaining)
            unit = phi(cls)
            cap = room // unit if room > 0 else 0
        else:
            cap = max_edge_multiplicity
        if max_edge_multiplicity is not None:
            cap = min(cap, max_edge_multiplicity)
        for total_mult in range(0, cap + 1):
            new_remaining = [x - total_mult * c for x, c in zip(remaining, cls)]
            if cert is not None and total_mult > 0 and phi(new_remaining) < 0:
                break
            for partition in _partitions(total_mult):
                rec(
                    edge_pos + 1,
                    new_remaining,
                    acc + [(edge.index, h) for h in partition],
                )

    rec(0, list(curve_class), [])
    uniq = sorted(set(results))
    return [r for r in uniq if r]


def _partitions(total: int) -> Iterator[tuple[int, ...]]:
    """Partitions of `total` into positive parts, non-increasing; () for 0."""
    if total == 0:
        yield ()
        return

    def rec(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    yield from rec(total, total)


def enumerate_graphs(
    mg: MomentGraph,
    curve_class: CurveClass,
    n_marks: int,
    simple_only: bool = False,
    *,
    mark_support: Sequence[Iterable[int]] | None = None,
    max_edge_multiplicity: int | None = None,
    budget: int | None = 10_000_000,
) -> Iterator[DecoratedGraph]:
    """Stream decorated graphs for the class, each exactly once up to iso.

    mark_support optionally restricts mark j (1-based) to vertices whose
    fixed point index lies in mark_support[j-1]; graphs excluded by it
    would contribute zero through their evaluation weights.
    """
    if len(curve_class) != mg.fan.n_rays:
        raise InputError("curve class length does not match the fan")
    if mark_support is not None and len(mark_support) != n_marks:
        raise InputError("mark_support must have one entry per mark")
    support = [frozenset(s) for s in mark_support] if mark_support is not None else None
    guard = _Budget(budget)

    if all(x == 0 for x in curve_class):
        # a constant map: one vertex carrying every mark, stable only with
        # at least three special points
        if n_marks < 3:
            return
        for fp in mg.points:
            if support is not None and any(fp.index not in s for s in support):
                continue
            graph = DecoratedGraph(
                labels=(fp.index,),
                edges=(),
                marks=(tuple(range(1, n_marks + 1)),),
                graph_autos=1,
            )
            if simple_only and is_simple(graph) is None:
                continue
            guard.step()
            yield graph
        return

    for parts in decompose_class(mg, curve_class, max_edge_multiplicity, guard):
        for labels, edges in _trees_from_parts(mg, parts, guard):
            yield from _decorate_tree(labels, edges, n_marks, simple_only, support, mg, guard)


def _trees_from_parts(
    mg: MomentGraph, parts: tuple[tuple[int, int], ...], guard: _Budget
) -> list[tuple[tuple[int, ...], tuple[GraphEdge, ...]]]:
    """All trees using each (wall, multiplicity) part exactly once, up to iso."""
    seen: set[tuple] = set()
    out: list[tuple[tuple[int, ...], tuple[GraphEdge, ...]]] = []

    first = parts[0]
    e0 = mg.edges[first[0]]

    def rec(
        labels: list[int],
        edges: list[GraphEdge],
        remaining: list[tuple[int, int]],
    ) -> None:
        guard.step()
        if not remaining:
            key = _canonical_key(tuple(labels), tuple(edges), None)
            if key not in seen:
                seen.add(key)
                out.append((tuple(labels), tuple(edges)))
            return
        for part in sorted(set(remaining)):
            ei, h = part
            edge = mg.edges[ei]
            rest = list(remaining)
            rest.remove(part)
            for attach_label, new_label in ((edge.a, edge.b), (edge.b, edge.a)):
                for v, lab in enumerate(labels):
                    if lab == attach_label:
                        u, w = v, len(labels)
                        rec(
                            labels + [new_label],
                            edges + [(min(u, w), max(u, w), ei, h)],
                            rest,
                        )

    rest = list(parts)
    rest.remove(first)
    rec([e0.a, e0.b], [(0, 1, first[0], first[1])], rest)
    return out


def _decorate_tree(
    labels: tuple[int, ...],
    edges: tuple[GraphEdge, ...],
    n_marks: int,
    simple_only: bool,
    support: list[frozenset[int]] | None,
    mg: MomentGraph,
    guard: _Budget,
) -> Iterator[DecoratedGraph]:
    autos = _decorated_tree_automorphisms(labels, edges)
    allowed: list[list[int]] = []
    for j in range(n_marks):
        if support is None:
            allowed.append(list(range(len(labels))))
        else:
            good = [v for v, lab in enumerate(labels) if lab in support[j]]
            if not good:
                return
            allowed.append(good)

    for assign in itertools.product(*allowed):
        guard.step()
        stab = 0
        canonical = True
        for perm in autos:
            image = tuple(perm[v] for v in assign)
            if image < assign:
                canonical = False
                break
            if image == assign:
                stab += 1
        if not canonical:
            continue
        marks: list[list[int]] = [[] for _ in labels]
        for j, v in enumerate(assign):
            marks[v].append(j + 1)
        graph = DecoratedGraph(
            labels=labels,
            edges=edges,
            marks=tuple(tuple(ms) for ms in marks),
            graph_autos=stab,
        )
        if simple_only and is_simple(graph) is None:
            continue
        yield graph


def _decorated_tree_automorphisms(
    labels: tuple[int, ...], edges: tuple[GraphEdge, ...]
) -> list[tuple[int, ...]]:
    """All vertex permutations preserving labels and decorated edges."""
    n = len(labels)
    by_label: dict[int, list[int]] = {}
    for v, lab in enumerate(labels):
        by_label.setdefault(lab, []).append(v)
    edge_set = {(u, v, ei, h) for u, v, ei, h in edges}

    groups = list(by_label.values())
    perms: list[tuple[int, ...]] = []
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        perm = [0] * n
        for group, image in zip(groups, choice):
            for src, dst in zip(group, image):
                perm[src] = dst
        mapped = {
            (min(perm[u], perm[v]), max(perm[u], perm[v]), ei, h) for u, v, ei, h in edges
        }
        if mapped == edge_set:
            perms.append(tuple(perm))
    return perms


def _canonical_key(
    labels: tuple[int, ...],
    edges: tuple[GraphEdge, ...],
    marks: tuple[tuple[int, ...], ...] | None,
) -> tuple:
    """Centroid-rooted canonical encoding of a decorated tree."""
    n = len(labels)
    if n == 1:
        return (labels[0], marks[0] if marks else ())
    adjacency: dict[int, list[tuple[int, int, int]]] = {v: [] for v in range(n)}
    for u, v, ei, h in edges:
        adjacency[u].append((v, ei, h))
        adjacency[v].append((u, ei, h))

    def encode(v: int, parent: int) -> tuple:
        children = sorted(
            (h, ei, encode(nb, v)) for nb, ei, h in adjacency[v] if nb != parent
        )
        return (labels[v], marks[v] if marks else (), tuple(children))

    return min(encode(c, -1) for c in _centroids(n, adjacency))


def _centroids(n: int, adjacency: dict[int, list[tuple[int, int, int]]]) -> list[int]:
    def max_component_without(v: int) -> int:
        seen = {v}
        best = 0
        for start, _, _ in adjacency[v]:
            if start in seen:
                continue
            size = 0
            stack = [start]
            seen.add(start)
            while stack:
                u = stack.pop()
                size += 1
                for nb, _, _ in adjacency[u]:
                    if nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
            best = max(best, size)
        return best

    scores = [max_component_without(v) for v in range(n)]
    low = min(scores)
    return [v for v in range(n) if scores[v] == low]
