"""Fans of smooth complete toric varieties and their input formats.

A fan is given by its primitive ray generators and the list of maximal
cones, each cone a set of ray indices.  Curve classes are recorded by
their intersection numbers against the ray divisors: a vector
(a_1, ..., a_n) with sum a_i * v_i = 0.  Cohomology input is a rational
combination of monomials in the ray divisors.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ._linalg import det_int, rank_rational
from .errors import FanError, InputError

__all__ = [
    "Fan",
    "CheckResult",
    "FanReport",
    "CohomClass",
    "parse_fan",
    "is_curve_class",
    "curve_class_rank",
    "parse_rational",
    "format_rational",
]

CurveClass = tuple[int, ...]
Monomial = tuple[int, ...]


def parse_rational(text: str | int) -> Fraction:
    """Parse "p/q" or "p" into an exact rational."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational literal {text!r}") from exc


def format_rational(value: Fraction | int) -> str:
    """Render a rational as "p/q" (or "p" for integers), q > 0 and reduced."""
    return str(Fraction(value))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class FanReport:
    passed: bool
    checks: tuple[CheckResult, ...]

    def to_payload(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks
            ],
        }


@dataclass(frozen=True)
class Fan:
    """A simplicial fan given by primitive rays and maximal cones.

    Construction performs only structural checks; completeness and
    smoothness are examined by validate() so that a broken fan can still
    be loaded and reported on.
    """

    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.names:
            object.__setattr__(self, "names", tuple(f"Z{i + 1}" for i in range(len(self.rays))))

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def cone_rays(self, cone_index: int) -> tuple[tuple[int, ...], ...]:
        return tuple(self.rays[i] for i in self.max_cones[cone_index])

    def facets(self) -> dict[tuple[int, ...], list[int]]:
        """Map each facet (sorted ray-index tuple) to the cones containing it."""
        seen: dict[tuple[int, ...], list[int]] = {}
        for ci, cone in enumerate(self.max_cones):
            for drop in cone:
                facet = tuple(i for i in cone if i != drop)
                seen.setdefault(facet, []).append(ci)
        return seen

    def validate(self) -> FanReport:
        """Check smoothness and completeness; never raises on failure."""
        checks: list[CheckResult] = []

        bad_det = [
            ci for ci in range(len(self.max_cones)) if abs(det_int(self.cone_rays(ci))) != 1
        ]
        checks.append(
            CheckResult(
                "cones_unimodular",
                not bad_det,
                f"{len(self.max_cones)} maximal cones"
                + ("" if not bad_det else f"; non-unimodular: {bad_det}"),
            )
        )

        facets = self.facets()
        unpaired = {f: cs for f, cs in facets.items() if len(cs) != 2}
        checks.append(
            CheckResult(
                "facets_paired",
                not unpaired,
                f"{len(facets)} facet pairings"
                + ("" if not unpaired else f"; unpaired facets: {sorted(unpaired)}"),
            )
        )

        adjacency: dict[int, set[int]] = {ci: set() for ci in range(len(self.max_cones))}
        for cones in facets.values():
            if len(cones) == 2:
                a, b = cones
                adjacency[a].add(b)
                adjacency[b].add(a)
        seen = {0}
        stack = [0]
        while stack:
            for nb in adjacency[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        connected = len(seen) == len(self.max_cones)
        checks.append(
            CheckResult(
                "adjacency_connected",
                connected,
                "cone adjacency graph is connected"
                if connected
                else f"only {len(seen)} of {len(self.max_cones)} cones reachable",
            )
        )

        return FanReport(all(c.passed for c in checks), tuple(checks))

    def require_valid(self) -> None:
        report = self.validate()
        if not report.passed:
            failed = ", ".join(c.name for c in report.checks if not c.passed)
            raise FanError(f"fan failed validation: {failed}")

    def content_hash(self) -> str:
        """Stable hash of the geometric content (names excluded)."""
        blob = json.dumps(
            {"dim": self.dim, "rays": self.rays, "max_cones": self.max_cones},
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode()).hexdigest()

    def to_payload(self) -> dict:
        return {
            "dim": self.dim,
            "rays": [list(r) for r in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
            "names": list(self.names),
        }


def _check_int_vector(vec: object, length: int, what: str) -> tuple[int, ...]:
    if not isinstance(vec, (list, tuple)) or len(vec) != length:
        raise FanError(f"{what} must be a list of {length} integers, got {vec!r}")
    out = []
    for x in vec:
        if isinstance(x, bool) or not isinstance(x, int):
            raise FanError(f"{what} must contain integers, got {x!r}")
        out.append(x)
    return tuple(out)


def parse_fan(source: str | Mapping) -> Fan:
    """Parse a fan from JSON text or an already-decoded mapping.

    Raises FanError on any structural problem: malformed JSON, missing
    keys, non-primitive or duplicate rays, out-of-range or wrong-size
    cones.  Smoothness and completeness are left to Fan.validate().
    """
    if isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise FanError(f"fan file is not valid JSON: {exc}") from exc
    else:
        data = source
    if not isinstance(data, Mapping):
        raise FanError("fan description must be a JSON object")
    for key in ("dim", "rays", "max_cones"):
        if key not in data:
            raise FanError(f"fan description missing key {key!r}")
    dim = data["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise FanError(f"dim must be a positive integer, got {dim!r}")

    raw_rays = data["rays"]
    if not isinstance(raw_rays, list) or not raw_rays:
        raise FanError("rays must be a non-empty list")
    rays = []
    for i, ray in enumerate(raw_rays):
        vec = _check_int_vector(ray, dim, f"ray {i}")
        if all(x == 0 for x in vec):
            raise FanError(f"ray {i} is the zero vector")
        if math.gcd(*(abs(x) for x in vec)) != 1:
            raise FanError(f"non-primitive ray {list(vec)} at index {i}")
        rays.append(vec)
    if len(set(rays)) != len(rays):
        dupes = sorted({r for r in rays if rays.count(r) > 1})
        raise FanError(f"duplicate rays: {[list(d) for d in dupes]}")

    raw_cones = data["max_cones"]
    if not isinstance(raw_cones, list) or not raw_cones:
        raise FanError("max_cones must be a non-empty list")
    cones = []
    for ci, cone in enumerate(raw_cones):
        if not isinstance(cone, list):
            raise FanError(f"cone {ci} must be a list of ray indices")
        if len(cone) != dim:
            raise FanError(f"cone {ci} has {len(cone)} rays; expected {dim}")
        for idx in cone:
            if isinstance(idx, bool) or not isinstance(idx, int) or not 0 <= idx < len(rays):
                raise FanError(f"cone {ci} has out-of-range ray index {idx!r}")
        if len(set(cone)) != dim:
            raise FanError(f"cone {ci} repeats a ray index")
        cones.append(tuple(sorted(cone)))
    if len(set(cones)) != len(cones):
        raise FanError("duplicate maximal cones")

    names: tuple[str, ...] = ()
    if "names" in data and data["names"] is not None:
        raw_names = data["names"]
        if (
            not isinstance(raw_names, list)
            or len(raw_names) != len(rays)
            or not all(isinstance(s, str) for s in raw_names)
        ):
            raise FanError("names must be a list of strings, one per ray")
        names = tuple(raw_names)

    return Fan(dim=dim, rays=tuple(rays), max_cones=tuple(cones), names=names)


def is_curve_class(fan: Fan, entries: Sequence[int]) -> bool:
    """True when the vector pairs to zero against every lattice coordinate.

    Intersection vectors of genuine curve classes satisfy
    sum_i entries[i] * ray_i = 0; anything else cannot arise from a curve.
    """
    if len(entries) != fan.n_rays:
        return False
    if any(isinstance(x, bool) or not isinstance(x, int) for x in entries):
        return False
    return all(
        sum(entries[i] * fan.rays[i][k] for i in range(fan.n_rays)) == 0 for k in range(fan.dim)
    )


def curve_class_rank(fan: Fan) -> int:
    """Rank of the lattice of intersection vectors (n_rays - dim when complete)."""
    return fan.n_rays - rank_rational([[fan.rays[i][k] for i in range(fan.n_rays)] for k in range(fan.dim)])


def _as_monomial(fan: Fan, exps: Sequence[int]) -> Monomial:
    if len(exps) != fan.n_rays:
        raise InputError(
            f"monomial exponent vector has length {len(exps)}; fan has {fan.n_rays} rays"
        )
    out = []
    for x in exps:
        if isinstance(x, bool) or not isinstance(x, int) or x < 0:
            raise InputError(f"monomial exponents must be non-negative integers, got {x!r}")
        out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class CohomClass:
    """A rational combination of monomials in the ray divisors.

    Terms are kept sorted with nonzero coefficients, so equal classes
    compare equal and hash alike.
    """

    n_rays: int
    terms: tuple[tuple[Monomial, Fraction], ...]

    @staticmethod
    def from_terms(fan: Fan, terms: Iterable[tuple[Sequence[int], Fraction | int]]) -> CohomClass:
        acc: dict[Monomial, Fraction] = {}
        for exps, coeff in terms:
            mono = _as_monomial(fan, exps)
            acc[mono] = acc.get(mono, Fraction(0)) + Fraction(coeff)
        cleaned = tuple(sorted((m, c) for m, c in acc.items() if c != 0))
        return CohomClass(fan.n_rays, cleaned)

    @staticmethod
    def monomial(fan: Fan, exps: Sequence[int]) -> CohomClass:
        return CohomClass(fan.n_rays, ((_as_monomial(fan, exps), Fraction(1)),))

    @staticmethod
    def unit(fan: Fan) -> CohomClass:
        return CohomClass.monomial(fan, (0,) * fan.n_rays)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Common total degree of all monomials; raises if inhomogeneous."""
        if not self.terms:
            raise InputError("the zero class has no degree")
        degrees = {sum(m) for m, _ in self.terms}
        if len(degrees) != 1:
            raise InputError(f"inhomogeneous insertion with degrees {sorted(degrees)}")
        return degrees.pop()

    def scaled(self, factor: Fraction | int) -> CohomClass:
        f = Fraction(factor)
        if f == 0:
            return CohomClass(self.n_rays, ())
        return CohomClass(self.n_rays, tuple((m, c * f) for m, c in self.terms))

    def plus(self, other: CohomClass) -> CohomClass:
        if other.n_rays != self.n_rays:
            raise InputError("cannot add classes over different fans")
        acc: dict[Monomial, Fraction] = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, Fraction(0)) + c
        return CohomClass(self.n_rays, tuple(sorted((m, c) for m, c in acc.items() if c != 0)))

    def times(self, other: CohomClass) -> CohomClass:
        if other.n_rays != self.n_rays:
            raise InputError("cannot multiply classes over different fans")
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                mono = tuple(a + b for a, b in zip(m1, m2))
                acc[mono] = acc.get(mono, Fraction(0)) + c1 * c2
        return CohomClass(self.n_rays, tuple(sorted((m, c) for m, c in acc.items() if c != 0)))

    def to_payload(self) -> list[dict]:
        return [
            {"monomial": list(m), "coeff": format_rational(c)} for m, c in self.terms
        ]

    @staticmethod
    def from_payload(fan: Fan, data: object) -> CohomClass:
        """Accept either a bare exponent vector or a list of term objects."""
        if isinstance(data, (list, tuple)) and all(
            isinstance(x, int) and not isinstance(x, bool) for x in data
        ):
            return CohomClass.monomial(fan, data)
        if isinstance(data, (list, tuple)):
            terms = []
            for item in data:
                if (
                    not isinstance(item, Mapping)
                    or "monomial" not in item
                    or "coeff" not in item
                ):
                    raise InputError(f"bad class term {item!r}")
                terms.append((list(item["monomial"]), parse_rational(item["coeff"])))
            if not terms:
                raise InputError("insertion class has no terms")
            return CohomClass.from_terms(fan, terms)
        raise InputError(f"cannot interpret insertion {data!r}")
