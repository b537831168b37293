"""Decorated graph enumeration: counts, classes, marks, automorphisms."""
import pytest

from toricgw import DecoratedGraph, ResourceBudgetError, enumerate_graphs, is_simple
from toricgw.graphs import automorphism_order, positivity_certificate

L = (1, 1, 1)
TWO_L = (2, 2, 2)


def count(mg, cls, m, **kw):
    return sum(1 for _ in enumerate_graphs(mg, cls, m, **kw))


def test_p2_line_counts(p2):
    # one wall between each pair of the three fixed points, every wall of
    # class L: a degree-one graph is a single unit edge, so three graphs
    assert count(p2, L, 0) == 3
    assert count(p2, L, 1) == 6
    assert count(p2, L, 2) == 12


def test_p2_conic_count(p2):
    # degree two: 3 single edges with multiplicity two, 3 two-edge paths
    # with distinct labels, 6 paths folded back onto the starting point
    assert count(p2, TWO_L, 0) == 12
    assert count(p2, TWO_L, 1) == 27


def test_p2_cubic_count(p2):
    assert count(p2, (3, 3, 3), 0) == 39


def test_p1xp1_counts(p1xp1):
    # a single ruling class is one of two parallel invariant spheres
    assert count(p1xp1, (1, 1, 0, 0), 0) == 2
    assert count(p1xp1, (1, 1, 1, 1), 0) == 4
    assert count(p1xp1, (1, 1, 1, 1), 1) == 12


def test_bundle_counts(b3):
    # six invariant fiber lines, three per fiber over the two base points
    assert count(b3, (0, 0, 1, 1, 1), 0) == 6
    # the isolated section class is a unique invariant sphere
    assert count(b3, (1, 1, -1, -1, 0), 0) == 1
    assert count(b3, (1, 1, 0, 0, 1), 0) == 6


def test_conic_automorphism_orders(p2):
    # multiplicity-two edges and folded paths each admit one symmetry
    orders = sorted(automorphism_order(g) for g in enumerate_graphs(p2, TWO_L, 0))
    assert orders == [1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2]
    for g in enumerate_graphs(p2, TWO_L, 0):
        assert automorphism_order(g) == g.graph_autos * g.multiplicity_product()


def test_total_class_matches_request(moment_graphs):
    # the defining constraint: multiplicity-weighted wall classes sum to A
    cases = [
        ("p2", L, 2),
        ("p2", TWO_L, 1),
        ("p2", TWO_L, 2),
        ("p1xp1", (1, 1, 1, 1), 1),
        ("f1", (0, 1, 0, 1), 1),
        ("bundle_r3", (0, 0, 1, 1, 1), 1),
    ]
    seen = 0
    for name, cls, m in cases:
        mg = moment_graphs[name]
        for g in enumerate_graphs(mg, cls, m):
            seen += 1
            assert g.total_class(mg) == cls
    assert seen > 100


def test_edges_lie_on_walls(p2):
    for g in enumerate_graphs(p2, TWO_L, 1):
        for u, v, ei, h in g.edges:
            edge = p2.edges[ei]
            assert {g.labels[u], g.labels[v]} == {edge.a, edge.b}
            assert h >= 1
            assert u < v


def test_marks_partition(p2):
    for g in enumerate_graphs(p2, L, 3):
        all_marks = [mk for ms in g.marks for mk in ms]
        assert sorted(all_marks) == [1, 2, 3]
        assert all(tuple(sorted(ms)) == ms for ms in g.marks)


def test_keys_unique(p2):
    graphs = list(enumerate_graphs(p2, TWO_L, 1))
    assert len({g.key() for g in graphs}) == len(graphs)


def test_key_ignores_vertex_numbering(p2):
    for g in enumerate_graphs(p2, TWO_L, 0):
        if g.n_vertices < 2:
            continue
        perm = list(reversed(range(g.n_vertices)))
        inv = {p: i for i, p in enumerate(perm)}
        relabeled = DecoratedGraph(
            labels=tuple(g.labels[perm[i]] for i in range(g.n_vertices)),
            edges=tuple(
                (min(inv[u], inv[v]), max(inv[u], inv[v]), ei, h)
                for u, v, ei, h in g.edges
            ),
            marks=tuple(g.marks[perm[i]] for i in range(g.n_vertices)),
            graph_autos=g.graph_autos,
        )
        assert relabeled.key() == g.key()


def test_enumeration_independent_of_ray_order():
    """Relabeling the fan's rays permutes classes but not graph counts."""
    from toricgw import build_moment_graph, parse_fan

    plain = parse_fan(
        {"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [0, 2], [1, 2]]}
    )
    shuffled = parse_fan(
        {"dim": 2, "rays": [[-1, -1], [1, 0], [0, 1]], "max_cones": [[1, 2], [0, 1], [0, 2]]}
    )
    mg1 = build_moment_graph(plain)
    mg2 = build_moment_graph(shuffled)
    for cls, m in [(L, 0), (L, 2), (TWO_L, 0), (TWO_L, 1)]:
        assert count(mg1, cls, m) == count(mg2, cls, m)


def test_simple_only_equals_filter(p2):
    full = {g.key() for g in enumerate_graphs(p2, L, 4) if is_simple(g) is not None}
    simple = {g.key() for g in enumerate_graphs(p2, L, 4, simple_only=True)}
    assert simple == full
    assert len(simple) == 30


def test_simple_count_conics(p2):
    assert count(p2, TWO_L, 4, simple_only=True) == 267


def test_simple_view_consistency(p2):
    for g in enumerate_graphs(p2, TWO_L, 4, simple_only=True):
        view = is_simple(g)
        assert view is not None
        assert view.graph is g or view.graph.key() == g.key()
        assert all(c <= 1 for c in view.branch_marks)
        # marks split between the root and its branches
        assert len(g.marks[view.root]) + sum(view.branch_marks) == 4
        assert g.degree(view.root) >= 3


def test_constant_maps(p2):
    # class zero: one vertex per fixed point carrying all marks, and only
    # when at least three marks make it stable
    zero = (0, 0, 0)
    assert count(p2, zero, 2) == 0
    assert count(p2, zero, 3) == 3
    graphs = list(enumerate_graphs(p2, zero, 3))
    for g in graphs:
        assert g.n_vertices == 1
        assert g.edges == ()
        assert g.marks == ((1, 2, 3),)


def test_mark_support_pruning(p2):
    # mark 1 pinned to fixed point 0: only graphs with a vertex there
    restricted = list(enumerate_graphs(p2, L, 1, mark_support=[{0}]))
    assert all(g.labels[[1 in ms for ms in g.marks].index(True)] == 0 for g in restricted)
    assert 0 < len(restricted) < count(p2, L, 1)


def test_budget_guard(p2):
    with pytest.raises(ResourceBudgetError):
        list(enumerate_graphs(p2, (4, 4, 4), 0, budget=50))


def test_multiplicity_cap(p2):
    # the cap bounds total usage per wall, so both the doubled edges and
    # the folded paths drop out, leaving the three embedded paths
    assert count(p2, TWO_L, 0, max_edge_multiplicity=1) == 3
    assert count(p2, TWO_L, 0, max_edge_multiplicity=2) == 12


def test_no_graphs_for_ineffective_class(b3):
    # nothing decomposes a class outside the effective cone
    assert count(b3, (-1, -1, 1, 1, 0), 0) == 0


def test_positivity_certificate(moment_graphs):
    # a positive functional on every wall class, used to bound searches
    for name, mg in moment_graphs.items():
        cert = positivity_certificate(mg)
        assert cert is not None, name
        for e in mg.edges:
            assert sum(c * x for c, x in zip(cert, e.curve_class)) > 0
