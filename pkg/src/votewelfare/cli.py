"""Command-line client for the simulation service.

Subcommands build a validated request, hand it to the service layer (in
process by default, over HTTP when --server is given), and render the
response. Exit codes: 0 success, 1 runtime/I-O failure, 2 usage/validation
failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .cultures import CULTURE_NAMES
from .experiments import ConfigError, parse_config_text, parse_int_axis
from .profile_text import parse_profile_rows
from .rules import RULE_NAMES
from .service import ops
from .service.schemas import (
    ManipulateRequest,
    ManipulateResponse,
    SampleRequest,
    SampleResponse,
    SweepRequest,
    SweepResponse,
)

EPILOG = (
    "rules: " + ", ".join(RULE_NAMES) + "\n"
    "cultures: " + ", ".join(CULTURE_NAMES) + "\n"
    "Set SWEEP_THREADS to cap sweep worker processes (0 = one per CPU)."
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="votewelfare",
        description="Strategic-voting welfare experiments under scoring rules.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a Monte Carlo sweep and write a CSV")
    sweep.add_argument("--config", help="key = value config file; flags override it")
    sweep.add_argument("--culture", help="culture name, e.g. ic or mallows_0.5")
    sweep.add_argument("--rules", help="comma-separated rule names (default: all 15)")
    sweep.add_argument("--behaviours", help="comma-separated subset of sincere,manipulator")
    sweep.add_argument("--n", help="voter counts: 10, 3,5,7 or 3..100")
    sweep.add_argument("--m", help="candidate counts: 10, 3,5,7 or 3..100")
    sweep.add_argument("--trials", type=int, help="profiles per cell (default 10000)")
    sweep.add_argument("--seed", type=int, help="master seed (default 0)")
    sweep.add_argument("--out", help="output CSV path (required)")
    sweep.add_argument("--bag-file", help="strict-order file for bag cultures")
    sweep.add_argument("--mixture-file", help="mixture-parameter file for the sushi culture")
    sweep.add_argument("--server", help="base URL of a running service (default: in-process)")
    sweep.set_defaults(handler=cmd_sweep)

    sample = sub.add_parser("sample", help="print profiles drawn from a culture")
    sample.add_argument("--culture", default="ic")
    sample.add_argument("--m", type=int, help="candidate count (data cultures pin their own)")
    sample.add_argument("--n", type=int, default=10, help="voters per profile")
    sample.add_argument("--count", type=int, default=1, help="number of profiles")
    sample.add_argument("--seed", type=int, default=0)
    sample.add_argument("--sigma", help="fixed reference order for mallows cultures, e.g. 0,1,2")
    sample.add_argument("--bag-file")
    sample.add_argument("--mixture-file")
    sample.add_argument("--server")
    sample.set_defaults(handler=cmd_sample)

    manipulate = sub.add_parser("manipulate", help="inspect one profile's optimal manipulation")
    manipulate.add_argument("--profile", required=True, help="profile file (one ballot per line)")
    manipulate.add_argument("--rule", required=True)
    manipulate.add_argument("--voter", type=int, default=0)
    manipulate.add_argument("--server")
    manipulate.set_defaults(handler=cmd_manipulate)

    rules_cmd = sub.add_parser("rules", help="list the rule roster")
    rules_cmd.add_argument("--server")
    rules_cmd.set_defaults(handler=cmd_rules)

    cultures_cmd = sub.add_parser("cultures", help="list the culture roster")
    cultures_cmd.add_argument("--server")
    cultures_cmd.set_defaults(handler=cmd_cultures)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(handler=cmd_serve)

    return parser


def _http_post(server: str, path: str, payload: dict, response_type):
    import httpx

    response = httpx.post(server.rstrip("/") + path, json=payload, timeout=None)
    if response.status_code in (400, 422):
        raise ValueError(_detail(response))
    response.raise_for_status()
    return response_type.model_validate(response.json())


def _http_get(server: str, path: str) -> list[dict]:
    import httpx

    response = httpx.get(server.rstrip("/") + path, timeout=None)
    response.raise_for_status()
    return response.json()


def _detail(response) -> str:
    try:
        return str(response.json().get("detail"))
    except Exception:
        return response.text


def cmd_sweep(args: argparse.Namespace) -> int:
    merged: dict[str, str] = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            merged = parse_config_text(fh.read(), source=args.config)
    for key in ("culture", "rules", "behaviours", "n", "m", "trials", "seed", "out",
                "bag_file", "mixture_file"):
        value = getattr(args, key)
        if value is not None:
            merged[key] = str(value)

    if "culture" not in merged:
        raise ConfigError("a culture is required (--culture or config file)")
    out = merged.get("out")
    if not out:
        raise ConfigError("an output path is required (--out or config file)")

    request = SweepRequest(
        culture=merged["culture"],
        rules=[r.strip() for r in merged["rules"].split(",")] if "rules" in merged else None,
        behaviours=(
            [b.strip() for b in merged["behaviours"].split(",")]
            if "behaviours" in merged
            else ["sincere", "manipulator"]
        ),
        n_values=list(parse_int_axis(merged["n"])) if "n" in merged else [10],
        m_values=list(parse_int_axis(merged["m"])) if "m" in merged else None,
        trials=int(merged.get("trials", 10_000)),
        seed=int(merged.get("seed", 0)),
        bag_file=merged.get("bag_file"),
        mixture_file=merged.get("mixture_file"),
    )
    if args.server:
        response = _http_post(args.server, "/sweep", request.model_dump(), SweepResponse)
    else:
        response = ops.run_sweep_request(request)
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(response.csv)
    print(f"wrote {len(response.records)} records to {out}")
    return 0


def cmd_sample(args: argparse.Namespace) -> int:
    sigma = [int(t) for t in args.sigma.split(",")] if args.sigma else None
    request = SampleRequest(
        culture=args.culture,
        m=args.m,
        n=args.n,
        count=args.count,
        seed=args.seed,
        sigma=sigma,
        bag_file=args.bag_file,
        mixture_file=args.mixture_file,
    )
    if args.server:
        response = _http_post(args.server, "/sample", request.model_dump(), SampleResponse)
    else:
        response = ops.run_sample(request)
    sys.stdout.write(response.text)
    return 0


def cmd_manipulate(args: argparse.Namespace) -> int:
    with open(args.profile, encoding="utf-8") as fh:
        profiles = parse_profile_rows(fh.read(), source=args.profile)
    if len(profiles) != 1:
        raise ValueError(f"{args.profile}: expected exactly one profile, found {len(profiles)}")
    request = ManipulateRequest(ballots=profiles[0], rule=args.rule, voter=args.voter)
    if args.server:
        response = _http_post(args.server, "/manipulate", request.model_dump(), ManipulateResponse)
    else:
        response = ops.run_manipulate(request)

    def triple(w) -> str:
        return f"borda={w.borda:.6f} rawls={w.rawls:.6f} nash={w.nash:.6f}"

    print(f"sincere winner: {response.sincere_winner}")
    print("achievable winners: " + ",".join(str(c) for c in response.achievable))
    print("optimal ballot: " + ",".join(str(c) for c in response.ballot))
    print(f"manipulated winner: {response.winner}")
    print(f"welfare sincere: {triple(response.welfare_sincere)}")
    print(f"welfare manipulated: {triple(response.welfare_manipulated)}")
    if not response.improved:
        print("no improving manipulation")
    return 0


def cmd_rules(args: argparse.Namespace) -> int:
    if args.server:
        infos = _http_get(args.server, "/rules")
        for info in infos:
            print(f"{info['name']}\t{info['family']}")
    else:
        for info in ops.list_rules():
            print(f"{info.name}\t{info.family}")
    return 0


def cmd_cultures(args: argparse.Namespace) -> int:
    if args.server:
        infos = _http_get(args.server, "/cultures")
        for info in infos:
            print(f"{info['name']}\t{info['kind']}")
    else:
        for info in ops.list_cultures():
            print(f"{info.name}\t{info.kind}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # httpx transport errors, unexpected failures
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
