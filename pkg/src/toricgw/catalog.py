"""Builders and loaders for the fans shipped with the package."""
from __future__ import annotations

import json
from importlib import resources

from .errors import InputError
from .fan import Fan, parse_fan

__all__ = [
    "projective_space",
    "projective_line",
    "product_of_lines",
    "hirzebruch",
    "proj_bundle",
    "bundle_cone_index",
    "shipped_fans",
    "load_fan",
    "list_fans",
]


def projective_space(d: int) -> Fan:
    """Fan of P^d: rays e_1..e_d and -(e_1+...+e_d), all d-subsets as cones."""
    if d < 1:
        raise InputError("projective space needs d >= 1")
    rays = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    rays.append(tuple(-1 for _ in range(d)))
    cones = []
    for drop in range(d, -1, -1):
        cones.append(tuple(sorted(i for i in range(d + 1) if i != drop)))
    return Fan(dim=d, rays=tuple(rays), max_cones=tuple(cones))


def projective_line() -> Fan:
    return projective_space(1)


def product_of_lines() -> Fan:
    """Fan of P^1 x P^1."""
    rays = ((1, 0), (-1, 0), (0, 1), (0, -1))
    cones = ((0, 2), (0, 3), (1, 2), (1, 3))
    return Fan(dim=2, rays=rays, max_cones=cones)


def hirzebruch(a: int = 1) -> Fan:
    """Fan of the Hirzebruch surface F_a (P(O + O(a)) over P^1)."""
    if a < 0:
        raise InputError("hirzebruch surface needs a >= 0")
    rays = ((1, 0), (0, 1), (-1, a), (0, -1))
    cones = ((0, 1), (1, 2), (2, 3), (0, 3))
    return Fan(dim=2, rays=rays, max_cones=cones)


def proj_bundle(r: int) -> Fan:
    """Fan of P(O^(r-2) + O(1) + O(1)) over P^1, a smooth projective r-fold.

    Rays (1-based, matching the divisor names Z1..Z(r+2)):
      v1 = e1, v2 = -e1 + e(r-1) + er, v3..v(r+1) = e2..er,
      v(r+2) = -(e2 + ... + er).
    Maximal cones drop one of {v1, v2} and one of {v3..v(r+2)}; the cone
    keeping v_a (a in {1,2}) and dropping v_t sits at list index
    (a-1)*r + (t-3).
    """
    if r < 3:
        raise InputError("the bundle fan needs r >= 3")
    e = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    rays = [e[0]]
    rays.append(tuple(-e[0][j] + e[r - 2][j] + e[r - 1][j] for j in range(r)))
    rays.extend(e[1:r])
    rays.append(tuple(-sum(e[i][j] for i in range(1, r)) for j in range(r)))
    cones = []
    for a in (1, 2):
        for t in range(3, r + 3):
            cone = [a - 1] + [i - 1 for i in range(3, r + 3) if i != t]
            cones.append(tuple(sorted(cone)))
    return Fan(dim=r, rays=tuple(rays), max_cones=tuple(cones))


def bundle_cone_index(r: int, a: int, t: int) -> int:
    """Cone list index in proj_bundle(r) for the cone keeping v_a, dropping v_t."""
    if a not in (1, 2) or not 3 <= t <= r + 2:
        raise InputError(f"no bundle cone with a={a}, t={t}")
    return (a - 1) * r + (t - 3)


def shipped_fans() -> dict[str, Fan]:
    """All example fans exercised by the test-suite, keyed by short name."""
    return {
        "p1": projective_line(),
        "p2": projective_space(2),
        "p1xp1": product_of_lines(),
        "f1": hirzebruch(1),
        "bundle_r3": proj_bundle(3),
        "bundle_r4": proj_bundle(4),
    }


def list_fans() -> list[str]:
    return sorted(shipped_fans())


def load_fan(name: str) -> Fan:
    """Load a shipped fan from its bundled JSON file."""
    path = resources.files("toricgw") / "fans" / f"{name}.json"
    try:
        text = path.read_text()
    except FileNotFoundError as exc:
        raise InputError(f"no shipped fan named {name!r}; have {list_fans()}") from exc
    return parse_fan(text)


def write_fan_files(directory) -> None:
    """Dump every shipped fan as JSON into the given directory."""
    from pathlib import Path

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    for name, fan in shipped_fans().items():
        (out / f"{name}.json").write_text(json.dumps(fan.to_payload(), indent=2) + "\n")
