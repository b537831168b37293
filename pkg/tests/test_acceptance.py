"""Acceptance gate: golden values, vanishing, relations, benchmarks, properties.

Each test prints one [PASS] line (after its assertions) naming the
criterion it certifies, with measured runtimes against the stated budgets.
"""
import itertools
import os
import time
from fractions import Fraction

import pytest

from toricgw import (
    CohomClass,
    InvariantCache,
    build_pairing,
    check_relation,
    enumerate_graphs,
    gw_invariant,
    pd_point_invariant,
    psi_intersection,
    quantum_multi_product,
    star_product,
)
from toricgw.moment import evaluate, generate_eval_point
from toricgw.quantum import intersection_number, poly_star

from oracles import psi_by_string_equation


def mono(mg, exps):
    return CohomClass.monomial(mg.fan, exps)


@pytest.fixture(scope="module")
def cache():
    return InvariantCache()


# r=3: marks Z4, Z4, Z5 and the top monomial Z1 Z3 Z5
R3_CLASS = (0, 0, 1, 1, 1)
R3_INSERTIONS = [(0, 0, 0, 1, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1), (1, 0, 1, 0, 1)]
# r=4: marks Z3, Z5, Z5, Z6 and the top monomial Z1 Z3 Z4 Z6
R4_CLASS = (0, 0, 1, 1, 1, 1)
R4_INSERTIONS = [
    (0, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 1),
    (1, 0, 1, 1, 0, 1),
]


def test_criterion_1_golden_values(b3, b4):
    budgets = []
    for mg, cls_vec, ins_vecs, label in (
        (b3, R3_CLASS, R3_INSERTIONS, "r=3"),
        (b4, R4_CLASS, R4_INSERTIONS, "r=4"),
    ):
        ins = [mono(mg, e) for e in ins_vecs]
        t0 = time.perf_counter()
        res = pd_point_invariant(mg, cls_vec, ins)
        elapsed = time.perf_counter() - t0
        assert res.value == Fraction(1), label
        assert res.mode == "twisted"
        assert elapsed < 10, (label, elapsed)
        budgets.append(f"{label} {elapsed:.2f}s")
    print(f"[PASS] criterion 1: golden fiber-class invariants equal 1 exactly "
          f"({'; '.join(budgets)}; budget 10s each)")


def test_criterion_2_vanishing_grid(b3):
    gens = {
        "lam1": (1, 1, -1, -1, 0),
        "lam2": (0, 0, 1, 1, 1),
    }
    ins = [mono(b3, e) for e in R3_INSERTIONS]
    t0 = time.perf_counter()
    checked = 0
    for a, b in itertools.product(range(3), repeat=2):
        if (a, b) == (0, 1):
            continue
        cls_vec = tuple(
            a * x + b * y for x, y in zip(gens["lam1"], gens["lam2"])
        )
        res = pd_point_invariant(b3, cls_vec, ins)
        assert res.value == 0, (a, b)
        # only the b=1 column is dimension-compatible; the rest must be
        # rejected by the gate rather than cancel numerically
        assert res.mode == ("twisted" if b == 1 else "dimension"), (a, b)
        checked += 1
    elapsed = time.perf_counter() - t0
    assert checked == 8
    assert elapsed < 120, elapsed
    print(f"[PASS] criterion 2: all 8 vanishing-grid cells are exactly 0 "
          f"({elapsed:.2f}s; budget 120s)")


def test_criterion_3_quantum_relations(b3, cache):
    table = build_pairing(b3)
    z = lambda k: mono(b3, tuple(1 if i == k else 0 for i in range(5)))
    caps = (2, 1)
    t0 = time.perf_counter()
    # the product of the three fiber divisors collapses to the fiber variable
    fiber, lhs, rhs = check_relation(
        b3, table, [z(2), z(3), z(4)], [], caps,
        rhs_shift=(0, 0, 1, 1, 1), cache=cache,
    )
    assert fiber.passed, fiber.mismatches
    # the two base divisors multiply to the section variable times two fibers
    base, lhs, rhs = check_relation(
        b3, table, [z(0), z(1)], [z(2), z(3)], caps,
        rhs_shift=(1, 1, -1, -1, 0), cache=cache,
    )
    assert base.passed, base.mismatches
    elapsed = time.perf_counter() - t0
    assert elapsed < 600, elapsed
    print(f"[PASS] criterion 3: both quantum ring relations hold at caps (2,1) "
          f"({elapsed:.2f}s; budget 600s)")


def test_criterion_4_plane_benchmarks(p2):
    pt = mono(p2, (1, 1, 0))
    t0 = time.perf_counter()
    n1 = gw_invariant(p2, (1, 1, 1), [pt, pt])
    t1 = time.perf_counter() - t0
    assert n1.value == 1
    assert t1 < 1, t1
    t0 = time.perf_counter()
    n2 = gw_invariant(p2, (2, 2, 2), [pt] * 5)
    t2 = time.perf_counter() - t0
    assert n2.value == 1
    assert t2 < 120, t2
    print(f"[PASS] criterion 4: one line through 2 points ({t1:.2f}s; budget 1s), "
          f"one conic through 5 points ({t2:.2f}s; budget 120s)")


@pytest.mark.skipif(
    not os.environ.get("TORICGW_STRETCH"),
    reason="stretch benchmark; set TORICGW_STRETCH=1 to run (budget 30 min)",
)
def test_criterion_4_stretch_cubics(p2):
    pt = mono(p2, (1, 1, 0))
    t0 = time.perf_counter()
    res = gw_invariant(p2, (3, 3, 3), [pt] * 8, jobs=os.cpu_count() or 1)
    elapsed = time.perf_counter() - t0
    assert res.value == 12
    assert elapsed < 1800, elapsed
    print(f"[PASS] criterion 4 stretch: 12 cubics through 8 points ({elapsed:.0f}s)")


def test_criterion_5_psi_oracle_equivalence():
    t0 = time.perf_counter()
    checked = 0
    for m in range(3, 9):
        for dvec in itertools.product(range(m - 2), repeat=m):
            if sum(dvec) != m - 3:
                continue
            assert psi_intersection(m, dvec) == psi_by_string_equation(dvec), dvec
            checked += 1
    elapsed = time.perf_counter() - t0
    assert checked == 1078
    assert elapsed < 1, elapsed
    print(f"[PASS] criterion 5: closed form equals the string recursion on all "
          f"{checked} exponent vectors with m <= 8 ({elapsed:.2f}s; budget 1s)")


def test_criterion_6_property_suites(moment_graphs, p2, p1xp1, b3, b4):
    results = []

    # (a) evaluation-point independence of every public invariant
    cases = 0
    for mg in moment_graphs.values():
        table = build_pairing(mg)
        for basis_cls in table.basis:
            values = {intersection_number(mg, basis_cls, seed=s) for s in (0, 31, 97)}
            assert len(values) == 1
            cases += 3
    pt2 = mono(p2, (1, 1, 0))
    assert len({gw_invariant(p2, (1, 1, 1), [pt2, pt2], seed=s).value
                for s in range(10)}) == 1
    cases += 10
    ptq = mono(p1xp1, (1, 0, 1, 0))
    assert len({gw_invariant(p1xp1, (1, 1, 1, 1), [ptq] * 3, seed=s).value
                for s in range(5)}) == 1
    cases += 5
    golden = [mono(b3, e) for e in R3_INSERTIONS]
    assert len({pd_point_invariant(b3, R3_CLASS, golden, seed=s).value
                for s in range(5)}) == 1
    cases += 5
    assert cases >= 100
    results.append(f"eval independence ({cases} runs)")

    # (b) twist placement invariance, exhaustive per instance
    for dvec in itertools.product(range(2), repeat=4):
        if sum(dvec) != 1:
            continue
        assert pd_point_invariant(b3, R3_CLASS, golden, dvec).value == 1
    golden4 = [mono(b4, e) for e in R4_INSERTIONS]
    for dvec in itertools.product(range(3), repeat=5):
        if sum(dvec) != 2:
            continue
        assert pd_point_invariant(b4, R4_CLASS, golden4, dvec).value == 1
    h = mono(p2, (1, 0, 0))
    line_values = set()
    for dvec in itertools.product(range(3), repeat=5):
        if sum(dvec) != 2:
            continue
        line_values.add(pd_point_invariant(p2, (1, 1, 1), [h] * 5, dvec).value)
    assert len(line_values) == 1
    results.append("twist placement (4 + 15 + 15 exhaustive)")

    # (c) mark permutation symmetry, exhaustive over two instances
    base4 = [pt2, pt2, h, h]
    expect4 = gw_invariant(p2, (1, 1, 1), base4).value
    for perm in itertools.permutations(range(4)):
        assert gw_invariant(p2, (1, 1, 1), [base4[i] for i in perm]).value == expect4
    expect_g = pd_point_invariant(b3, R3_CLASS, golden).value
    for perm in itertools.permutations(range(4)):
        assert pd_point_invariant(
            b3, R3_CLASS, [golden[i] for i in perm]
        ).value == expect_g
    results.append("mark permutations (48 exhaustive)")

    # (d) wall congruence and edge antisymmetry on every shipped fan
    edge_checks = 0
    for name, mg in moment_graphs.items():
        xi = generate_eval_point(mg, 11)
        for e in mg.edges:
            assert e.weight_b == tuple(-w for w in e.weight_a), name
            omega = evaluate(e.weight_a, xi)
            left = sorted(evaluate(w, xi) for w in mg.points[e.a].weights)
            right = sorted(evaluate(w, xi) for w in mg.points[e.b].weights)
            assert _congruent(left, right, omega), (name, e.index)
            edge_checks += 1
    results.append(f"wall congruence ({edge_checks} edges exhaustive)")

    # (e) every enumerated graph carries exactly the requested class
    graph_checks = 0
    for name, cls_vec, m in (
        ("p2", (1, 1, 1), 2),
        ("p2", (2, 2, 2), 2),
        ("p1xp1", (1, 1, 1, 1), 1),
        ("bundle_r3", (0, 0, 1, 1, 1), 1),
        ("f1", (0, 1, 0, 1), 1),
    ):
        mg = moment_graphs[name]
        for g in enumerate_graphs(mg, cls_vec, m):
            assert g.total_class(mg) == cls_vec
            graph_checks += 1
    assert graph_checks >= 100
    results.append(f"class decomposition ({graph_checks} graphs)")

    # (f) pairing duals form an exact two-sided identity
    pairing_checks = 0
    for name, mg in moment_graphs.items():
        table = build_pairing(mg)
        for i in range(table.rank):
            dual = table.render(table.dual_coords[i])
            for j in range(table.rank):
                if table.degrees[j] != table.degrees[i]:
                    continue
                value = intersection_number(mg, table.basis[j].times(dual))
                assert value == (1 if i == j else 0), (name, i, j)
                pairing_checks += 1
    results.append(f"pairing identity ({pairing_checks} entries exhaustive)")

    print(f"[PASS] criterion 6: property suites all hold: {'; '.join(results)}")


def _congruent(left, right, omega):
    """Perfect matching where paired weights differ by a multiple of omega."""
    if not left:
        return True
    a = left[0]
    for k, b in enumerate(right):
        if (a - b) % omega == 0 and _congruent(left[1:], right[:k] + right[k + 1:], omega):
            return True
    return False


def test_criterion_7_associativity(p2, b3, cache):
    t0 = time.perf_counter()
    table2 = build_pairing(p2)
    h = mono(p2, (1, 0, 0))
    multi = quantum_multi_product(p2, table2, (h, h, h), (2,), cache=cache)
    hh = star_product(p2, table2, h, h, (2,), cache=cache)
    assert poly_star(p2, table2, hh, h, cache=cache).as_dict() == multi.as_dict()

    table3 = build_pairing(b3)
    z1 = mono(b3, (1, 0, 0, 0, 0))
    z3 = mono(b3, (0, 0, 1, 0, 0))
    z4 = mono(b3, (0, 0, 0, 1, 0))
    caps = (2, 1)
    multi = quantum_multi_product(b3, table3, (z1, z3, z4), caps, cache=cache)
    left = poly_star(
        b3, table3, star_product(b3, table3, z1, z3, caps, cache=cache), z4, cache=cache
    )
    right = poly_star(
        b3, table3, star_product(b3, table3, z3, z4, caps, cache=cache), z1, cache=cache
    )
    assert left.as_dict() == multi.as_dict()
    assert right.as_dict() == multi.as_dict()
    elapsed = time.perf_counter() - t0
    assert elapsed < 900, elapsed
    print(f"[PASS] criterion 7: three-factor products match both iterated "
          f"bracketings ({elapsed:.2f}s; budget 900s)")
