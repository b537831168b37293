"""Command line front end.

Every subcommand builds a request model, runs it through the shared
handlers (in-process by default, against a running service with
--server), and prints one JSON object on standard output.  Output is
byte-identical across runs for a fixed input and --seed: rationals are
exact "p/q" strings and nothing time-dependent is printed.

Exit codes: 0 on success (and, for validate / check-relation, a passing
result), 1 on compute failure or a failing result, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from .api.handlers import (
    error_kind,
    handle_check_relation,
    handle_gw,
    handle_moment_graph,
    handle_psi,
    handle_qprod,
    handle_validate,
)
from .api.schemas import (
    MAX_SEED,
    CheckRelationRequest,
    GwRequest,
    MomentGraphRequest,
    PsiRequest,
    QprodRequest,
    ValidateRequest,
    error_response,
)
from .catalog import list_fans, load_fan
from .errors import InputError, ToricGWError

__all__ = ["main", "build_parser"]


def _render(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")] if text else []
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _vectors(text: str) -> list[list[int]]:
    """Semicolon-separated exponent vectors: "1,1,0;0,1,1"."""
    if not text:
        return []
    return [_ints(part) for part in text.split(";")]


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _jobs(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"jobs must be an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("jobs must be at least 1")
    return value


def _fan_source(text: str):
    """A fan file path, or the name of a shipped fan.

    File content is decoded here when possible; undecodable text is passed
    through so the validator can report on it.
    """
    path = Path(text)
    if path.exists():
        raw = path.read_text()
        try:
            return json.loads(raw)
        except json.JSONDecodeError:
            return raw
    if text in list_fans():
        return load_fan(text).to_payload()
    raise argparse.ArgumentTypeError(
        f"no fan file {text!r} (shipped fans: {', '.join(list_fans())})"
    )


def _insertion_payloads(args) -> list:
    items: list = list(args.insertions) if args.insertions else []
    if getattr(args, "insertion_file", None):
        path = Path(args.insertion_file)
        if not path.exists():
            raise InputError(f"insertion file {str(path)!r} does not exist")
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"insertion file is not valid JSON: {exc}") from exc
        if not isinstance(data, list):
            raise InputError("insertion file must hold a JSON list of classes")
        items.extend(data)
    return items


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricgw",
        description="Exact genus-zero Gromov-Witten invariants of smooth toric varieties",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, jobs: bool = True) -> None:
        p.add_argument("--seed", type=_seed, default=0, help="evaluation seed (u64)")
        if jobs:
            p.add_argument("--jobs", type=_jobs, default=1, help="worker processes")
        p.add_argument("--server", help="URL of a running service to compute against")

    p = sub.add_parser("validate", help="structural checks on a fan file")
    p.add_argument("fan", type=_fan_source)
    p.add_argument("--server")

    p = sub.add_parser("moment-graph", help="fixed points, walls, and weights")
    p.add_argument("fan", type=_fan_source)
    p.add_argument("--server")

    p = sub.add_parser("psi", help="cotangent-line intersection number")
    p.add_argument("--m", type=int, required=True, help="number of marks")
    p.add_argument("--d", type=_ints, required=True, help="comma-separated exponents")
    p.add_argument("--server")

    p = sub.add_parser("gw", help="genus-zero invariant for one curve class")
    p.add_argument("fan", type=_fan_source)
    p.add_argument("--class", dest="curve_class", type=_ints, required=True,
                   help="intersection vector, one integer per ray")
    p.add_argument("--insertions", type=_vectors, default=[],
                   help="semicolon-separated exponent vectors")
    p.add_argument("--insertion-file",
                   help="JSON list of classes; terms may carry rational coefficients")
    p.add_argument("--psi", type=_ints, default=None,
                   help="cotangent exponents, one per mark")
    p.add_argument("--pd-point", action="store_true",
                   help="twist by the point class and normalize away the multiplicity")
    p.add_argument("--dump-graphs", action="store_true",
                   help="emit each contributing graph as one JSON line")
    p.add_argument("--trace", action="store_true",
                   help="emit per-graph contributions as JSON lines (forces serial)")
    p.add_argument("--check-independence", dest="check_independence",
                   action="store_true", default=True)
    p.add_argument("--no-check-independence", dest="check_independence",
                   action="store_false",
                   help="skip the second evaluation point (faster, unchecked)")
    common(p)

    p = sub.add_parser("qprod", help="truncated multi-factor quantum product")
    p.add_argument("fan", type=_fan_source)
    p.add_argument("--insertions", type=_vectors, default=[],
                   help="factors as semicolon-separated exponent vectors")
    p.add_argument("--insertion-file",
                   help="JSON list of factor classes")
    p.add_argument("--caps", type=_ints, required=True,
                   help="per-generator exponent caps")
    common(p)

    p = sub.add_parser("check-relation", help="compare two quantum products")
    p.add_argument("fan", type=_fan_source)
    p.add_argument("--lhs", type=_vectors, default=[],
                   help="left factors; empty means the unit")
    p.add_argument("--rhs", type=_vectors, default=[],
                   help="right factors; empty means the unit")
    p.add_argument("--lhs-shift", type=_ints, default=None,
                   help="curve class multiplying the left side as q^shift")
    p.add_argument("--rhs-shift", type=_ints, default=None,
                   help="curve class multiplying the right side as q^shift")
    p.add_argument("--caps", type=_ints, required=True)
    common(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _remote(server: str, endpoint: str, body: dict) -> tuple[dict, bool]:
    import httpx

    url = server.rstrip("/") + endpoint
    resp = httpx.post(url, json=body, timeout=None)
    try:
        data = resp.json()
    except ValueError:
        data = {"error": {"kind": "internal", "message": resp.text.strip()}}
    if resp.status_code >= 400 and "error" not in data:
        data = {"error": {"kind": "input", "message": json.dumps(data, sort_keys=True)}}
    return data, resp.status_code < 400


def _execute(endpoint: str, request, handler, server: str | None) -> tuple[dict, bool]:
    if server:
        return _remote(server, endpoint, request.model_dump(mode="json", by_alias=True))
    response = handler(request)
    return response.model_dump(mode="json", by_alias=True, exclude_none=True), True


def _emit_gw(payload: dict) -> None:
    for line in payload.pop("graphs", None) or []:
        print(_render(line))
    for line in payload.pop("trace", None) or []:
        print(_render(line))
    print(_render(payload))


def _dispatch(args) -> int:
    command = args.command
    server = getattr(args, "server", None)

    if command == "validate":
        payload, ok = _execute("/v1/validate", ValidateRequest(fan=args.fan),
                               handle_validate, server)
        print(_render(payload))
        return 0 if ok and payload.get("passed") else 1

    if command == "moment-graph":
        payload, ok = _execute("/v1/moment-graph", MomentGraphRequest(fan=args.fan),
                               handle_moment_graph, server)
        print(_render(payload))
        return 0 if ok else 1

    if command == "psi":
        payload, ok = _execute("/v1/psi", PsiRequest(m=args.m, d=args.d),
                               handle_psi, server)
        print(_render(payload))
        return 0 if ok else 1

    if command == "gw":
        request = GwRequest(
            fan=args.fan,
            curve_class=args.curve_class,
            insertions=_insertion_payloads(args),
            psi=args.psi,
            pd_point=args.pd_point,
            seed=args.seed,
            jobs=args.jobs,
            check_independence=args.check_independence,
            dump_graphs=args.dump_graphs,
            trace=args.trace,
        )
        payload, ok = _execute("/v1/gw", request, handle_gw, server)
        if not ok:
            print(_render(payload))
            return 1
        _emit_gw(payload)
        return 0

    if command == "qprod":
        request = QprodRequest(
            fan=args.fan,
            factors=_insertion_payloads(args),
            caps=args.caps,
            seed=args.seed,
            jobs=args.jobs,
        )
        payload, ok = _execute("/v1/qprod", request, handle_qprod, server)
        print(_render(payload))
        return 0 if ok else 1

    if command == "check-relation":
        request = CheckRelationRequest(
            fan=args.fan,
            lhs=args.lhs,
            rhs=args.rhs,
            lhs_shift=args.lhs_shift,
            rhs_shift=args.rhs_shift,
            caps=args.caps,
            seed=args.seed,
            jobs=args.jobs,
        )
        payload, ok = _execute("/v1/check-relation", request, handle_check_relation, server)
        print(_render(payload))
        return 0 if ok and payload.get("passed") else 1

    if command == "serve":
        import uvicorn

        from .api.service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    raise AssertionError(f"unhandled command {command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except ValidationError as exc:
        # flags parsed but the request grammar was not met
        print(f"toricgw: {exc.errors()[0]['msg']}", file=sys.stderr)
        return 2
    except ToricGWError as exc:
        body = error_response(error_kind(exc), str(exc))
        print(_render(body.model_dump()))
        return 1


if __name__ == "__main__":
    sys.exit(main())
