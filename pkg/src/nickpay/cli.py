"""Command-line front end over a persisted world state file."""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import harness
from .errors import INVALID_ARGUMENT, NickPayError, StateFileError, error_code
from .ngs import IssuanceRejected, NotOwner
from .pairing import MalformedEncoding

DEFAULT_STATE = "nickpay-state.json"


def _u64(text: str) -> int:
    n = int(text, 0)
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return n


def _amount(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("amount must be positive")
    return n


def _common(suppress: bool) -> argparse.ArgumentParser:
    # added both before and after the subcommand; the inner copy must not
    # clobber values given to the outer one
    d = argparse.SUPPRESS
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--state", default=d if suppress else DEFAULT_STATE, help="world state file")
    p.add_argument("--seed", type=_u64, default=d if suppress else None, help="64-bit world seed")
    p.add_argument("--json", action="store_true", default=d if suppress else False,
                   help="machine-readable output")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nickpay", parents=[_common(False)],
                                     description="NickPay nickname-based payment simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    inner = [_common(True)]

    sub.add_parser("setup", parents=inner, help="generate issuer, supervisor and authority keys")
    p = sub.add_parser("join", parents=inner, help="enroll a user")
    p.add_argument("user")
    p = sub.add_parser("mint", parents=inner, help="mint to a fresh nickname of a user")
    p.add_argument("user")
    p.add_argument("amount", type=_amount)
    p = sub.add_parser("transfer", parents=inner, help="pay another member via the relayer")
    p.add_argument("sender")
    p.add_argument("recipient")
    p.add_argument("amount", type=_amount)
    p = sub.add_parser("scan", parents=inner, help="list announcements a user can trace")
    p.add_argument("user")
    p = sub.add_parser("open", parents=inner, help="supervisor opening of a nickname")
    p.add_argument("nickname")
    p = sub.add_parser("audit", parents=inner, help="open and judge a nickname")
    p.add_argument("nickname")
    p = sub.add_parser("demo", parents=inner, help="run the full storyline in memory")
    p.add_argument("--split-at", type=int, default=None,
                   help="export and re-import the world after this many steps")
    p = sub.add_parser("state", parents=inner, help="export or import the state file")
    p.add_argument("action", choices=("export", "import"))
    p.add_argument("path")
    p = sub.add_parser("bench", parents=inner, help="latency report with JSON, CSV and PNG output")
    p.add_argument("--iterations", type=int, default=1000, help="timed runs per operation (default 1000)")
    p.add_argument("--out", default="bench-report", help="directory for bench.json, bench.csv and bench.png")
    return parser


# -- state file ---------------------------------------------------------------

def load_world(path) -> harness.WorldState:
    try:
        text = Path(path).read_text()
    except FileNotFoundError:
        raise StateFileError(f"no state file at {path}; run setup first") from None
    return harness.WorldState.from_json(text)


def save_world(world: harness.WorldState, path) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=".nickpay-")
    with os.fdopen(fd, "w") as fh:
        fh.write(world.to_json())
    os.replace(tmp, path)


# -- commands -----------------------------------------------------------------

def cmd_setup(args):
    if Path(args.state).exists():
        world = load_world(args.state)
    else:
        world = harness.new_world(args.seed)
    harness.run_setup(world)
    save_world(world, args.state)
    e = world.transcript[-1]
    return {"seed": world.rng_seed, "ipk": e["ipk"]}, f"world set up (seed {world.rng_seed})"


def _mutating(fn):
    def wrapper(args):
        world = load_world(args.state)
        try:
            result, text = fn(world, args)
        finally:
            # failed settlements are recorded in the transcript too
            save_world(world, args.state)
        return result, text
    return wrapper


@_mutating
def cmd_join(world, args):
    harness.run_join(world, args.user)
    mpk = world.users[args.user].mpk.hex()
    return {"user": args.user, "mpk": mpk}, f"{args.user} joined; mpk {mpk[:16]}..."


@_mutating
def cmd_mint(world, args):
    ev = harness.run_mint(world, args.user, args.amount)
    nk = ev.recipient.hex()
    return ({"user": args.user, "amount": args.amount, "nickname": nk, "sequence": ev.sequence},
            f"minted {args.amount} to {args.user} at nickname {nk[:16]}... (event {ev.sequence})")


@_mutating
def cmd_transfer(world, args):
    ev = harness.run_transfer(world, args.sender, args.recipient, args.amount)
    nk = ev.recipient.hex()
    return ({"from": args.sender, "to": args.recipient, "amount": args.amount,
             "nickname": nk, "sequence": ev.sequence},
            f"{args.sender} paid {args.amount} to {args.recipient} (event {ev.sequence})")


@_mutating
def cmd_scan(world, args):
    entries = harness.run_scan(world, args.user)
    balance = harness.wallet_balance(world, args.user)
    rows = [{**e.event.to_dict(), "owned": e.owned} for e in entries]
    lines = [f"#{r['sequence']} {r['kind']:<8} {r['amount']:>10} {'owned' if r['owned'] else '-'}" for r in rows]
    lines.append(f"balance on traced nicknames: {balance}")
    return {"user": args.user, "events": rows, "balance": balance}, "\n".join(lines)


@_mutating
def cmd_open(world, args):
    res = harness.run_open(world, args.nickname)
    res = {k: v for k, v in res.items() if k != "type"}
    text = f"opened to {res['user_id']}" if res["outcome"] == "FOUND" else "NOT_FOUND"
    return res, text


@_mutating
def cmd_audit(world, args):
    rep = harness.run_audit(world, args.nickname)
    text = "NOT_FOUND" if rep.outcome == "NOT_FOUND" else f"user {rep.user_id}: {rep.verdict}"
    return rep.to_dict(), text


def _short(v):
    if isinstance(v, str) and len(v) > 24:
        return v[:16] + "..."
    return v


def cmd_demo(args):
    seed = 42 if args.seed is None else args.seed
    world = harness.run_demo(seed, split_at=args.split_at)
    lines = []
    for e in world.transcript:
        detail = " ".join(f"{k}={_short(v)}" for k, v in sorted(e.items()) if k not in ("step", "op"))
        lines.append(f"[{e['step']:02d}] {e['op']:<8} {detail}")
    return {"transcript": world.transcript}, "\n".join(lines)


def cmd_state(args):
    if args.action == "export":
        world = load_world(args.state)
        save_world(world, args.path)
        return {"exported": args.path}, f"state written to {args.path}"
    world = load_world(args.path)
    save_world(world, args.state)
    return {"imported": args.path}, f"state loaded from {args.path}"


def cmd_bench(args):
    from .bench import run_bench, write_report

    result = run_bench(args.iterations, seed=args.seed or 0)
    paths = write_report(result, args.out)
    lines = [f"{op:<9} median {ms:8.3f} ms" for op, ms in result["median_ms"].items()]
    lines.append(f"pairings: gvf={result['pairings']['gvf']} uvf={result['pairings']['uvf']}")
    lines.append("wrote " + ", ".join(paths.values()))
    return {**result, "files": paths}, "\n".join(lines)


COMMANDS = {
    "setup": cmd_setup, "join": cmd_join, "mint": cmd_mint, "transfer": cmd_transfer,
    "scan": cmd_scan, "open": cmd_open, "audit": cmd_audit, "demo": cmd_demo,
    "state": cmd_state, "bench": cmd_bench,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result, text = COMMANDS[args.command](args)
    except (NickPayError, NotOwner, IssuanceRejected, MalformedEncoding, ValueError) as exc:
        code = error_code(exc)
        name = exc.name if isinstance(exc, NickPayError) else type(exc).__name__
        if args.json:
            print(json.dumps({"ok": False, "error": name, "code": code, "message": str(exc)}, sort_keys=True))
        else:
            print(f"error: {name} (code {code}): {exc}", file=sys.stderr)
        return code or INVALID_ARGUMENT
    if args.json:
        if args.command == "demo":
            sys.stdout.write("".join(json.dumps(e, sort_keys=True, separators=(",", ":")) + "\n"
                                     for e in result["transcript"]))
        else:
            print(json.dumps({"ok": True, "command": args.command, "result": result}, sort_keys=True))
    else:
        print(text)
    return 0
