"""Command line front end.

Subcommands: enumerate, weights, verify, table, search.  Every JSON or
CSV output embeds a run manifest (command, config, version, seed,
timestamp) sufficient to reproduce the run.  Exit codes: 0 success,
1 verification failure, 2 bound violation, 64 usage error, 65 parse
error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from datetime import datetime, timezone

from . import __version__
from .extremal import build, class_key, count_classes, verify_instance
from .numeric import target
from .search import SearchConfig, accumulate
from .sptree import (
    Parallel,
    SpTreeError,
    TreeParseError,
    enumerate_rooted,
    format_tree,
    parse_tree,
)
from .weights import induced_weights, weights_to_json

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_VIOLATION = 2
EXIT_USAGE = 64
EXIT_PARSE = 65

_RANGE = re.compile(r"^(\d+)\.\.(\d+)$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def run_manifest(command: str, config: dict, trees=()) -> dict:
    stamp = os.environ.get("EXTREMAL_TIMESTAMP")
    if not stamp:
        stamp = datetime.now(timezone.utc).isoformat()
    return {
        "command": command,
        "config": config,
        "version": __version__,
        "seed": config.get("seed"),
        "timestamp": stamp,
        "trees": list(trees),
    }


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _parse_two_sp(text: str):
    tree = parse_tree(text)
    if not isinstance(tree, Parallel):
        raise TreeParseError(
            "root must be a parallel composition (the graph is not 2-connected)", 0)
    return tree


def cmd_enumerate(args) -> int:
    if args.n < 2 or args.n > 12 or args.k < 1:
        raise UsageError("need 2 <= n <= 12 and k >= 1")
    trees = enumerate_rooted(args.n, args.k)
    classes = len({class_key(build(t)) for t in trees})
    if args.format == "json":
        manifest = run_manifest("enumerate", {"n": args.n, "k": args.k})
        _emit_json({
            "manifest": manifest,
            "trees": [format_tree(t) for t in trees],
            "classes": classes,
        })
    else:
        for tree in trees:
            print(format_tree(tree))
        print(f"classes: {classes}")
    return EXIT_OK


def cmd_weights(args) -> int:
    tree = _parse_two_sp(args.tree)
    weights = induced_weights(tree)
    if args.format == "json":
        manifest = run_manifest("weights", {"tree": args.tree}, trees=[args.tree])
        _emit_json({"manifest": manifest, "weights": weights_to_json(weights)})
    else:
        print(", ".join(str(weights[e]) for e in sorted(weights)))
    return EXIT_OK


def _verify_trees(args):
    match = _RANGE.match(args.spec)
    if match:
        lo, hi = int(match.group(1)), int(match.group(2))
        if lo < 2 or hi < lo or hi > 12:
            raise UsageError("verify range must satisfy 2 <= lo <= hi <= 12")
        if args.k_range:
            kmatch = _RANGE.match(args.k_range)
            if kmatch:
                klo, khi = int(kmatch.group(1)), int(kmatch.group(2))
            elif args.k_range.isdigit():
                klo = khi = int(args.k_range)
            else:
                raise UsageError("k range must look like 2 or 2..4")
        else:
            klo, khi = 1, 11
        for n in range(lo, hi + 1):
            for k in range(max(1, klo), min(n - 1, khi) + 1):
                yield from enumerate_rooted(n, k)
    elif args.spec.isdigit():
        n = int(args.spec)
        if n < 2 or n > 12:
            raise UsageError("verify needs 2 <= n <= 12")
        for k in range(1, n):
            yield from enumerate_rooted(n, k)
    else:
        yield _parse_two_sp(args.spec)


def cmd_verify(args) -> int:
    manifest = run_manifest("verify", {"spec": args.spec, "k_range": args.k_range,
                                       "tol": args.tol})
    reports = []
    ok = True
    for tree in _verify_trees(args):
        report = verify_instance(build(tree), tol=args.tol)
        passed = (report["eigen_ok"] and report["degenerate_ok"]
                  and report["target_ok"] and report["dual_ok"])
        reports.append(report)
        if not passed:
            ok = False
            print(json.dumps(report), file=sys.stderr)
    _emit_json({"manifest": manifest, "instances": reports, "all_ok": ok})
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_table(args) -> int:
    if args.n_max < 2 or args.n_max > 9:
        raise UsageError("table needs 2 <= n-max <= 9")
    if args.n_max > 7 and not args.long:
        raise UsageError("rows above n = 7 need --long")
    manifest = run_manifest("table", {"n_max": args.n_max, "long": args.long})
    print("# manifest " + json.dumps(manifest))
    print("n," + ",".join(f"k={k}" for k in range(1, args.n_max)))
    for n in range(2, args.n_max + 1):
        counts = [str(count_classes(n, k)) for k in range(1, n)]
        print(",".join([str(n)] + counts))
    return EXIT_OK


def cmd_search(args) -> int:
    if args.n < 2 or args.k < 1 or args.k >= args.n:
        raise UsageError("need n > k >= 1")
    config = SearchConfig(
        attempts=args.N,
        eps=args.eps,
        init_magnitude=args.init_magnitude,
        decay=args.decay,
        max_steps=args.max_steps,
        min_magnitude=args.min_magnitude,
        seed=args.seed,
        dedup_tol=args.dedup_tol,
    )
    result = accumulate(args.n, args.k, config)
    config_dict = {
        "n": args.n, "k": args.k, "seed": config.seed, "N": config.attempts,
        "eps": config.eps, "init_magnitude": config.init_magnitude,
        "decay": config.decay, "max_steps": config.max_steps,
        "min_magnitude": config.min_magnitude, "dedup_tol": config.dedup_tol,
    }
    manifest = run_manifest("search", config_dict)
    payload = {
        "manifest": manifest,
        "n": args.n,
        "k": args.k,
        "classes": len(result.classes),
        "violation": result.violation is not None,
        "restarts": result.restarts,
        "representatives": [
            [float(x) for x in member.basis.flatten()]
            for member, _ in result.classes
        ],
        "scores": [
            float(math.cos(target(member)[0])) for member, _ in result.classes
        ],
    }
    if result.violation is not None:
        payload["violation_report"] = {
            "deviation_cos": result.violation.deviation_cos,
            "subset": list(result.violation.subset),
            "basis": [float(x) for x in result.violation.subspace.basis.flatten()],
        }
    _emit_json(payload)
    return EXIT_VIOLATION if result.violation is not None else EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="spextremal", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list canonical trees and class count")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("weights", help="induced edge weights of a tree")
    p.add_argument("tree")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("verify", help="verify instances (range like 2..7, or a tree)")
    p.add_argument("spec")
    p.add_argument("k_range", nargs="?", default=None)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="CSV triangle of class counts")
    p.add_argument("n_max", type=int)
    p.add_argument("--long", action="store_true",
                   help="allow the slow rows n = 8, 9")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("search", help="randomized extremal-subspace search")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--N", type=int, default=200)
    p.add_argument("--eps", type=float, default=1e-4)
    p.add_argument("--init-magnitude", type=float, default=0.5)
    p.add_argument("--decay", type=float, default=0.9)
    p.add_argument("--max-steps", type=int, default=100_000)
    p.add_argument("--min-magnitude", type=float, default=1e-9)
    p.add_argument("--dedup-tol", type=float, default=1e-3)
    p.set_defaults(func=cmd_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TreeParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SpTreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
