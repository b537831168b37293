"""Quantum products assembled from point-normalized invariants.

The cohomology basis comes from square-free face monomials, paired by
exact fixed-point integration.  Product coefficients are stored as
coordinate vectors over that basis, so comparing two products compares
cohomology classes, not monomial spellings.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from ._linalg import solve_rational
from .errors import ConsistencyError, DegenerateEvalPointError, InputError
from .fan import CohomClass, CurveClass, Fan, format_rational
from .graphs import positivity_certificate
from .invariants import pd_point_invariant, virtual_dim_ok
from .localization import Localizer
from .moment import MomentGraph, generate_eval_point

__all__ = [
    "intersection_number",
    "PairingTable",
    "build_pairing",
    "minimal_generators",
    "enumerate_effective",
    "effective_window",
    "QuantumPoly",
    "quantum_multi_product",
    "star_product",
    "poly_star",
    "check_relation",
    "RelationReport",
    "InvariantCache",
]


def intersection_number(mg: MomentGraph, cls: CohomClass, seed: int = 0) -> Fraction:
    """Exact integral of a class over the variety by fixed-point summation.

    Classes of degree below the dimension integrate to zero; degree above
    the dimension is rejected (the fixed-point sum is not a constant there).
    """
    fan = mg.fan
    if cls.n_rays != fan.n_rays:
        raise InputError("class does not match the fan")
    if cls.is_zero():
        return Fraction(0)
    for monomial, _ in cls.terms:
        if sum(monomial) > fan.dim:
            raise InputError("cannot integrate a class of degree above the dimension")
    last: Fraction | None = None
    for attempt in range(10):
        try:
            values = []
            for s in (seed + 2 * attempt, seed + 2 * attempt + 1):
                xi = generate_eval_point(mg, s)
                loc = Localizer(mg, xi)
                total = Fraction(0)
                for fp in mg.points:
                    total += loc.ev_value(cls, fp.index) / loc.euler(fp.index)
                values.append(total)
        except (DegenerateEvalPointError, ZeroDivisionError):
            continue
        if values[0] != values[1]:
            raise ConsistencyError(
                f"fixed-point integration disagrees across evaluation points: "
                f"{values[0]} vs {values[1]}"
            )
        return values[0]
    raise DegenerateEvalPointError("no usable evaluation points for integration")


def _face_monomials(fan: Fan, degree: int) -> list[tuple[int, ...]]:
    """Square-free exponent vectors of the given degree supported on cones.

    Orbit closures of cone faces span the cohomology, so these are enough
    to carry a basis.
    """
    seen = set()
    for cone in fan.max_cones:
        for subset in itertools.combinations(cone, degree):
            seen.add(subset)
    out = []
    for subset in sorted(seen):
        exps = [0] * fan.n_rays
        for r in subset:
            exps[r] = 1
        out.append(tuple(exps))
    return out


@dataclass(frozen=True)
class PairingTable:
    """Cohomology basis with exact Gram data per complementary degree pair.

    basis[i] is a face monomial of degree degrees[i]; dual_coords[i] is the
    coordinate vector (over the whole basis) of the element pairing to 1
    with basis[i] and to 0 with the rest of its degree.
    """

    fan: Fan
    basis: tuple[CohomClass, ...]
    degrees: tuple[int, ...]
    dual_coords: tuple[tuple[Fraction, ...], ...]
    grams: Mapping[int, tuple[tuple[Fraction, ...], ...]]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def indices_of_degree(self, degree: int) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == degree]

    def coords(self, mg: MomentGraph, cls: CohomClass, seed: int = 0) -> tuple[Fraction, ...]:
        """Expand a class over the basis, one degree block at a time."""
        if cls.n_rays != self.fan.n_rays:
            raise InputError("class does not match the fan")
        out = [Fraction(0)] * self.rank
        by_degree: dict[int, list[tuple[tuple[int, ...], Fraction]]] = {}
        for monomial, coeff in cls.terms:
            by_degree.setdefault(sum(monomial), []).append((monomial, coeff))
        for degree, terms in by_degree.items():
            part = CohomClass(cls.n_rays, tuple(sorted(terms)))
            idx = self.indices_of_degree(degree)
            comp = self.indices_of_degree(self.fan.dim - degree)
            if len(idx) == 0:
                raise InputError(f"no basis elements in degree {degree}")
            rhs = [
                intersection_number(mg, part.times(self.basis[j]), seed) for j in comp
            ]
            # gram rows run over this degree's elements, so pairing a
            # combination of them against comp reads off the transpose
            gram = self.grams[degree]
            transposed = [[gram[l][q] for l in range(len(idx))] for q in range(len(comp))]
            solution = solve_rational(transposed, rhs)
            if solution is None:
                raise ConsistencyError("pairing solve failed on a computed Gram block")
            for i, x in zip(idx, solution):
                out[i] += x
        return tuple(out)

    def render(self, coords: Sequence[Fraction]) -> CohomClass:
        """The basis combination with the given coordinates, as a class."""
        acc = CohomClass(self.fan.n_rays, ())
        for i, c in enumerate(coords):
            if c != 0:
                acc = acc.plus(self.basis[i].scaled(c))
        return acc

    def to_payload(self) -> dict:
        return {
            "basis": [
                {"monomial": [list(m) for m, _ in b.terms][0], "degree": d}
                for b, d in zip(self.basis, self.degrees)
            ],
            "rank": self.rank,
        }


def _rank_growing_selection(
    matrix: list[list[Fraction]], rows: list[int], cols: list[int]
) -> tuple[list[int], list[int]]:
    """Row and column subsets carrying an invertible minor of maximal rank."""
    picked_rows: list[int] = []
    picked_cols: list[int] = []
    for r in rows:
        trial_rows = picked_rows + [r]
        extended = False
        for c in cols:
            if c in picked_cols:
                continue
            trial_cols = picked_cols + [c]
            minor = [[matrix[i][j] for j in trial_cols] for i in trial_rows]
            if _det(minor) != 0:
                picked_rows = trial_rows
                picked_cols = trial_cols
                extended = True
                break
        if not extended:
            continue
    return picked_rows, picked_cols


def _principal_selection(matrix: list[list[Fraction]], n: int) -> list[int]:
    """Indices of an invertible principal minor of maximal rank.

    A symmetric pairing of rank r always has one of size r, but greedy
    one-at-a-time growth can stall (antidiagonal Grams), so search by size.
    """
    rank = _matrix_rank(matrix)
    for subset in itertools.combinations(range(n), rank):
        minor = [[matrix[i][j] for j in subset] for i in subset]
        if _det(minor) != 0:
            return list(subset)
    raise ConsistencyError("no invertible principal pairing block of full rank")


def _det(matrix: list[list[Fraction]]) -> Fraction:
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    m = [row[:] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor != 0:
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def _matrix_rank(matrix: list[list[Fraction]]) -> int:
    if not matrix or not matrix[0]:
        return 0
    m = [row[:] for row in matrix]
    rank = 0
    n_cols = len(m[0])
    row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(row, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = Fraction(1) / m[row][col]
        for r in range(len(m)):
            if r != row and m[r][col] != 0:
                factor = m[r][col] * inv
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def build_pairing(mg: MomentGraph, seed: int = 0) -> PairingTable:
    """Select a monomial basis per degree with invertible pairing blocks.

    The total basis size must equal the number of fixed points (the Euler
    characteristic); anything else means the weight data is broken.
    """
    fan = mg.fan
    d = fan.dim
    candidates = {k: _face_monomials(fan, k) for k in range(d + 1)}
    chosen: dict[int, list[tuple[int, ...]]] = {}

    for k in range(0, d // 2 + 1):
        comp = d - k
        rows = candidates[k]
        cols = candidates[comp]
        matrix = [
            [
                intersection_number(mg, CohomClass.monomial(fan, _mono_sum(a, b)), seed)
                for b in cols
            ]
            for a in rows
        ]
        if k == comp:
            idx = _principal_selection(matrix, len(rows))
            chosen[k] = [rows[i] for i in idx]
        else:
            ri, ci = _rank_growing_selection(
                matrix, list(range(len(rows))), list(range(len(cols)))
            )
            chosen[k] = [rows[i] for i in ri]
            chosen[comp] = [cols[i] for i in ci]

    basis: list[CohomClass] = []
    degrees: list[int] = []
    for k in range(d + 1):
        for exps in chosen.get(k, []):
            basis.append(CohomClass.monomial(fan, exps))
            degrees.append(k)
    if len(basis) != len(fan.max_cones):
        raise ConsistencyError(
            f"pairing basis has rank {len(basis)}; expected {len(fan.max_cones)} "
            "from the fixed-point count"
        )

    grams: dict[int, tuple[tuple[Fraction, ...], ...]] = {}
    by_degree = {k: [i for i, deg in enumerate(degrees) if deg == k] for k in range(d + 1)}
    for k in range(d + 1):
        idx = by_degree[k]
        comp = by_degree[d - k]
        gram = tuple(
            tuple(
                intersection_number(mg, basis[i].times(basis[j]), seed) for j in comp
            )
            for i in idx
        )
        grams[k] = gram

    dual_coords: list[tuple[Fraction, ...]] = []
    for i, k in zip(range(len(basis)), degrees):
        idx = by_degree[k]
        comp = by_degree[d - k]
        pos = idx.index(i)
        gram = grams[k]
        rhs = [Fraction(1) if p == pos else Fraction(0) for p in range(len(idx))]
        solution = solve_rational([list(row) for row in gram], rhs)
        if solution is None:
            raise ConsistencyError("pairing block is singular after selection")
        vec = [Fraction(0)] * len(basis)
        for j, c in zip(comp, solution):
            vec[j] = c
        dual_coords.append(tuple(vec))

    table = PairingTable(
        fan=fan,
        basis=tuple(basis),
        degrees=tuple(degrees),
        dual_coords=tuple(dual_coords),
        grams=grams,
    )
    _check_gram_inverse(table)
    return table


def _mono_sum(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _check_gram_inverse(table: PairingTable) -> None:
    d = table.fan.dim
    for k in range(d + 1):
        idx = table.indices_of_degree(k)
        for p, i in enumerate(idx):
            dual = table.dual_coords[i]
            for q, j in enumerate(idx):
                comp = table.indices_of_degree(d - k)
                acc = Fraction(0)
                for c_index in comp:
                    coeff = dual[c_index]
                    if coeff == 0:
                        continue
                    pos = comp.index(c_index)
                    acc += coeff * table.grams[k][q][pos]
                expected = Fraction(1) if i == j else Fraction(0)
                if acc != expected:
                    raise ConsistencyError("dual basis fails the pairing identity")


def minimal_generators(mg: MomentGraph) -> list[CurveClass]:
    """Distinct wall classes with the redundant ones removed.

    A class expressible as a non-negative integer combination of the
    others adds nothing to the effective window.  Sorted by total degree
    then lexicographically, which fixes the q-variable order everywhere.
    """
    classes = sorted(set(mg.distinct_edge_classes()), key=lambda c: (sum(c), c))
    cert = positivity_certificate(mg)
    if cert is None:
        return classes
    kept: list[CurveClass] = []
    for cls in classes:
        others = [c for c in classes if c != cls]
        if not _representable(cls, others, cert):
            kept.append(cls)
    return kept


def _representable(
    target: CurveClass, gens: Sequence[CurveClass], cert: Sequence[int]
) -> bool:
    """Whether target is a non-negative integer combination of gens."""

    def phi(vec: Sequence[int]) -> int:
        return sum(w * x for w, x in zip(cert, vec))

    def rec(pos: int, remaining: tuple[int, ...]) -> bool:
        if all(x == 0 for x in remaining):
            return True
        if pos == len(gens):
            return False
        unit = phi(gens[pos])
        room = phi(remaining)
        cap = room // unit if unit > 0 and room > 0 else 0
        for mult in range(cap + 1):
            nxt = tuple(x - mult * g for x, g in zip(remaining, gens[pos]))
            if phi(nxt) < 0:
                break
            if rec(pos + 1, nxt):
                return True
        return False

    return rec(0, tuple(target))


def effective_window(
    mg: MomentGraph, caps: Sequence[int]
) -> list[tuple[tuple[int, ...], CurveClass]]:
    """All (exponent tuple, class) pairs with exponents within the caps.

    Exponents index the minimal generators in their sorted order.
    """
    gens = minimal_generators(mg)
    if len(caps) != len(gens):
        raise InputError(
            f"expected {len(gens)} caps (one per generator {[list(g) for g in gens]}), "
            f"got {len(caps)}"
        )
    for c in caps:
        if not isinstance(c, int) or isinstance(c, bool) or c < 0:
            raise InputError("caps must be non-negative integers")
    n = mg.fan.n_rays
    out = []
    for exps in itertools.product(*(range(c + 1) for c in caps)):
        vec = [0] * n
        for e, g in zip(exps, gens):
            for i in range(n):
                vec[i] += e * g[i]
        out.append((exps, tuple(vec)))
    out.sort()
    return out


def enumerate_effective(mg: MomentGraph, caps: Sequence[int]) -> list[CurveClass]:
    """Deduplicated effective classes within the caps, including zero."""
    seen = []
    for _, vec in effective_window(mg, caps):
        if vec not in seen:
            seen.append(vec)
    return seen


@dataclass(frozen=True)
class QuantumPoly:
    """A truncated quantum product: basis-coordinate vectors per q-exponent.

    coeffs maps generator-exponent tuples to coordinate vectors over the
    pairing basis; zero vectors are dropped.
    """

    generators: tuple[CurveClass, ...]
    caps: tuple[int, ...]
    coeffs: tuple[tuple[tuple[int, ...], tuple[Fraction, ...]], ...]

    @staticmethod
    def from_dict(
        generators: Sequence[CurveClass],
        caps: Sequence[int],
        data: Mapping[tuple[int, ...], Sequence[Fraction]],
    ) -> "QuantumPoly":
        cleaned = []
        for exps in sorted(data):
            vec = tuple(data[exps])
            if any(c != 0 for c in vec):
                cleaned.append((tuple(exps), vec))
        return QuantumPoly(tuple(generators), tuple(caps), tuple(cleaned))

    def as_dict(self) -> dict[tuple[int, ...], tuple[Fraction, ...]]:
        return {exps: vec for exps, vec in self.coeffs}

    def coefficient(self, exps: tuple[int, ...]) -> tuple[Fraction, ...] | None:
        return self.as_dict().get(exps)

    def to_payload(self, table: PairingTable) -> dict:
        terms = []
        for exps, vec in self.coeffs:
            cls = table.render(vec)
            terms.append(
                {
                    "q_exponents": list(exps),
                    "class": cls.to_payload(),
                    "coords": [format_rational(c) for c in vec],
                }
            )
        return {
            "generators": [list(g) for g in self.generators],
            "caps": list(self.caps),
            "terms": terms,
        }


class InvariantCache:
    """Exact invariant store keyed by fan, class, and insertion content.

    In-memory always; optionally persisted one file per key with atomic
    replacement so concurrent writers stay consistent.
    """

    def __init__(self, directory: str | os.PathLike | None = None):
        if directory is None:
            directory = os.environ.get("TORICGW_CACHE")
        self.directory = Path(directory) if directory else None
        if self.directory is not None:
            self.directory.mkdir(parents=True, exist_ok=True)
        self._mem: dict[str, Fraction] = {}

    @staticmethod
    def key(fan: Fan, curve_class: CurveClass, insertions: Sequence[CohomClass]) -> str:
        payload = {
            "fan": fan.content_hash(),
            "class": list(curve_class),
            "insertions": sorted(
                [
                    [[list(m), [c.numerator, c.denominator]] for m, c in cls.terms]
                    for cls in insertions
                ]
            ),
            "normalization": "point",
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def get(self, key: str) -> Fraction | None:
        if key in self._mem:
            return self._mem[key]
        if self.directory is not None:
            path = self.directory / f"{key}.json"
            if path.exists():
                data = json.loads(path.read_text())
                value = Fraction(data["value"])
                self._mem[key] = value
                return value
        return None

    def put(self, key: str, value: Fraction) -> None:
        self._mem[key] = value
        if self.directory is not None:
            path = self.directory / f"{key}.json"
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            try:
                with os.fdopen(fd, "w") as handle:
                    json.dump({"value": str(value)}, handle)
                os.replace(tmp, path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise


def _cached_pd_invariant(
    mg: MomentGraph,
    curve_class: CurveClass,
    insertions: Sequence[CohomClass],
    cache: InvariantCache | None,
    seed: int,
    jobs: int,
) -> Fraction:
    if cache is None:
        return pd_point_invariant(mg, curve_class, insertions, seed=seed, jobs=jobs).value
    key = InvariantCache.key(mg.fan, curve_class, insertions)
    hit = cache.get(key)
    if hit is not None:
        return hit
    value = pd_point_invariant(mg, curve_class, insertions, seed=seed, jobs=jobs).value
    cache.put(key, value)
    return value


def quantum_multi_product(
    mg: MomentGraph,
    table: PairingTable,
    factors: Sequence[CohomClass],
    caps: Sequence[int],
    *,
    cache: InvariantCache | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> QuantumPoly:
    """The r-fold quantum product as a truncated q-polynomial.

    Each coefficient of q^A is the sum over the basis of the
    point-normalized (r+1)-point invariant against the dual element.
    """
    if len(factors) < 2:
        raise InputError("a quantum product needs at least two factors")
    gens = minimal_generators(mg)
    for f in factors:
        if f.is_zero():
            return QuantumPoly.from_dict(gens, caps, {})
        f.degree()
    window = effective_window(mg, caps)
    fan = mg.fan
    m = len(factors) + 1
    dvec = (m - 3,) + (0,) * (m - 1)
    data: dict[tuple[int, ...], list[Fraction]] = {}
    for exps, A in window:
        vec = [Fraction(0)] * table.rank
        hit = False
        for i, delta in enumerate(table.basis):
            if not virtual_dim_ok(fan, A, list(factors) + [delta], dvec):
                continue
            value = _cached_pd_invariant(
                mg, A, list(factors) + [delta], cache, seed, jobs
            )
            if value == 0:
                continue
            hit = True
            dual = table.dual_coords[i]
            for j in range(table.rank):
                vec[j] += value * dual[j]
        if hit:
            data[exps] = vec
    return QuantumPoly.from_dict(gens, caps, data)


def star_product(
    mg: MomentGraph,
    table: PairingTable,
    x: CohomClass,
    y: CohomClass,
    caps: Sequence[int],
    *,
    cache: InvariantCache | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> QuantumPoly:
    """The small quantum product of two classes."""
    return quantum_multi_product(
        mg, table, (x, y), caps, cache=cache, seed=seed, jobs=jobs
    )


def poly_star(
    mg: MomentGraph,
    table: PairingTable,
    poly: QuantumPoly,
    cls: CohomClass,
    *,
    cache: InvariantCache | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> QuantumPoly:
    """Right-multiply a truncated product by a class, truncating again.

    Window exponents add, so every surviving term of the result only needs
    factor terms already inside the window.
    """
    caps = poly.caps
    acc: dict[tuple[int, ...], list[Fraction]] = {}
    partials: dict[int, QuantumPoly] = {}
    for exps, vec in poly.coeffs:
        for i in range(table.rank):
            if vec[i] == 0:
                continue
            if i not in partials:
                partials[i] = quantum_multi_product(
                    mg, table, (table.basis[i], cls), caps,
                    cache=cache, seed=seed, jobs=jobs,
                )
            partial = partials[i]
            for exps2, vec2 in partial.coeffs:
                total = tuple(a + b for a, b in zip(exps, exps2))
                if any(t > c for t, c in zip(total, caps)):
                    continue
                slot = acc.setdefault(total, [Fraction(0)] * table.rank)
                for j in range(table.rank):
                    slot[j] += vec[i] * vec2[j]
    return QuantumPoly.from_dict(poly.generators, caps, acc)


@dataclass(frozen=True)
class RelationReport:
    """Coefficientwise comparison of two truncated q-polynomials."""

    passed: bool
    caps: tuple[int, ...]
    generators: tuple[CurveClass, ...]
    mismatches: tuple[tuple[int, ...], ...]

    def to_payload(self, table: PairingTable, lhs: QuantumPoly, rhs: QuantumPoly) -> dict:
        lhs_map = lhs.as_dict()
        rhs_map = rhs.as_dict()
        details = []
        for exps in sorted(set(lhs_map) | set(rhs_map)):
            left = lhs_map.get(exps)
            right = rhs_map.get(exps)
            details.append(
                {
                    "q_exponents": list(exps),
                    "lhs": table.render(left).to_payload() if left else [],
                    "rhs": table.render(right).to_payload() if right else [],
                    "equal": left == right,
                }
            )
        return {
            "passed": self.passed,
            "caps": list(self.caps),
            "generators": [list(g) for g in self.generators],
            "terms": details,
        }


def shift_poly(poly: QuantumPoly, shift: Sequence[int]) -> QuantumPoly:
    """Multiply by q^shift, dropping exponents that leave the window."""
    if len(shift) != len(poly.caps):
        raise InputError("shift length does not match the generator count")
    data: dict[tuple[int, ...], tuple[Fraction, ...]] = {}
    for exps, vec in poly.coeffs:
        total = tuple(e + s for e, s in zip(exps, shift))
        if any(t > c for t, c in zip(total, poly.caps)):
            continue
        data[total] = vec
    return QuantumPoly.from_dict(poly.generators, poly.caps, data)


def unit_poly(mg: MomentGraph, table: PairingTable, caps: Sequence[int]) -> QuantumPoly:
    """The multiplicative unit: the fundamental class at q^0."""
    gens = minimal_generators(mg)
    unit = CohomClass.unit(mg.fan)
    coords = table.coords(mg, unit)
    zero = tuple(0 for _ in gens)
    return QuantumPoly.from_dict(gens, caps, {zero: coords})


def shift_to_exponents(mg: MomentGraph, shift_class: Sequence[int]) -> tuple[int, ...]:
    """Express a curve class in generator exponents; must be exact."""
    gens = minimal_generators(mg)
    target = tuple(shift_class)
    if len(target) != mg.fan.n_rays:
        raise InputError("shift class length does not match the fan")
    cert = positivity_certificate(mg)
    best: tuple[int, ...] | None = None

    def phi(vec):
        return sum(w * x for w, x in zip(cert, vec)) if cert else None

    def rec(pos: int, remaining: tuple[int, ...], acc: tuple[int, ...]):
        nonlocal best
        if best is not None:
            return
        if all(x == 0 for x in remaining):
            best = acc + (0,) * (len(gens) - len(acc))
            return
        if pos == len(gens):
            return
        unit = phi(gens[pos]) if cert else 1
        room = phi(remaining) if cert else 32
        cap = room // unit if unit and room and room > 0 else 0
        if cert is None:
            cap = 32
        for mult in range(cap + 1):
            nxt = tuple(x - mult * g for x, g in zip(remaining, gens[pos]))
            if cert is not None and phi(nxt) < 0:
                break
            rec(pos + 1, nxt, acc + (mult,))

    rec(0, target, ())
    if best is None:
        raise InputError(
            f"{list(target)} is not a non-negative combination of the generators"
        )
    return best


def check_relation(
    mg: MomentGraph,
    table: PairingTable,
    lhs_factors: Sequence[CohomClass],
    rhs_factors: Sequence[CohomClass],
    caps: Sequence[int],
    *,
    lhs_shift: Sequence[int] | None = None,
    rhs_shift: Sequence[int] | None = None,
    cache: InvariantCache | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> tuple[RelationReport, QuantumPoly, QuantumPoly]:
    """Compare two quantum-product sides coefficientwise within the caps.

    Each side is a product of factors (empty means the unit) optionally
    multiplied by q^shift, with shifts given as curve classes.
    """
    sides = []
    for factors, shift in ((lhs_factors, lhs_shift), (rhs_factors, rhs_shift)):
        if len(factors) == 0:
            poly = unit_poly(mg, table, caps)
        elif len(factors) == 1:
            base = unit_poly(mg, table, caps)
            poly = poly_star(
                mg, table, base, factors[0], cache=cache, seed=seed, jobs=jobs
            )
        else:
            poly = quantum_multi_product(
                mg, table, factors, caps, cache=cache, seed=seed, jobs=jobs
            )
        if shift is not None:
            poly = shift_poly(poly, shift_to_exponents(mg, shift))
        sides.append(poly)
    lhs, rhs = sides
    lhs_map = lhs.as_dict()
    rhs_map = rhs.as_dict()
    zero = tuple(Fraction(0) for _ in range(table.rank))
    mismatches = []
    for exps in sorted(set(lhs_map) | set(rhs_map)):
        if lhs_map.get(exps, zero) != rhs_map.get(exps, zero):
            mismatches.append(exps)
    report = RelationReport(
        passed=not mismatches,
        caps=tuple(caps),
        generators=lhs.generators,
        mismatches=tuple(mismatches),
    )
    return report, lhs, rhs
