"""Command line entry point: ``star-ics <command> --n N [options]``."""

from __future__ import annotations

import argparse
import json
import sys

from . import export
from .distributions import (
    divergence_report,
    eset_distribution,
    weight_distributions,
)
from .gamma import build_gamma
from .lambda_tree import diameter, generate_pruned, generate_unpruned, prune, table_T
from .oracle import HARD_MAX_N, OracleRefused, verify_all

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3

FORMATS = {
    "tree": ("text", "dot", "json"),
    "ledger": ("text", "json"),
    "gamma": ("text", "dot", "json"),
    "dist": ("csv", "json", "text"),
    "eset": ("csv", "json", "text"),
    "table": ("text", "json"),
    "diameter": ("text",),
    "verify": ("text", "json"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="star-ics", description="1-ics trees and weight distributions of star graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help, needs_n=True):
        p = sub.add_parser(name, help=help)
        if needs_n:
            p.add_argument("--n", type=int, required=True, help="star graph order")
        p.add_argument("--format", choices=("dot", "json", "csv", "text"), default=None)
        p.add_argument("-o", "--output", help="write here instead of stdout")
        return p

    p = add("tree", "the 1-ics tree")
    p.add_argument("--unpruned", action="store_true", help="skip pruning (structure only)")
    add("ledger", "pruning ledger, one row per visited vertex")
    add("gamma", "pruned tree plus threads")
    p = add("dist", "vertex and class counts per weight")
    p.add_argument("--compare-closed", action="store_true", help="report closed-form vs enumeration mismatches")
    p.add_argument("--max-omega", type=int, default=12)
    p = add("eset", "weight distribution of permutations with a fixed first entry")
    p.add_argument("--i", type=int, required=True, help="first entry")
    add("table", "horizontal paths laid out by weight")
    add("diameter", "diameter of ST_n")
    p = add("verify", "compare everything against brute-force BFS", needs_n=False)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--deep", action="store_true", help="include n=9")
    p.add_argument("--allow-large", action="store_true", help=f"permit n={HARD_MAX_N}")
    return parser


def _render(args) -> tuple[str, int]:
    cmd, fmt = args.command, args.format
    if cmd == "tree":
        tree = generate_unpruned(args.n) if args.unpruned else generate_pruned(args.n)
        return {"text": export.tree_to_text, "dot": export.tree_to_dot, "json": export.tree_to_json}[fmt](tree), 0
    if cmd == "ledger":
        _, rows = prune(generate_unpruned(args.n))
        return (export.ledger_text if fmt == "text" else export.ledger_json)(rows), 0
    if cmd == "gamma":
        g = build_gamma(args.n)
        if fmt == "dot":
            return export.tree_to_dot(g.tree, g), 0
        return (export.gamma_to_text if fmt == "text" else export.gamma_to_json)(g), 0
    if cmd == "dist":
        if args.compare_closed:
            return _compare_closed(args.max_omega), 0
        verts, classes = weight_distributions(args.n)
        if fmt == "json":
            return export.distribution_json(verts, classes), 0
        text = export.distribution_csv(verts, classes)
        return (text if fmt == "csv" else text.replace(",", "\t")), 0
    if cmd == "eset":
        d = eset_distribution(args.n, args.i)
        if fmt == "json":
            return export.eset_json(d), 0
        text = export.eset_csv(d)
        return (text if fmt == "csv" else text.replace(",", "\t")), 0
    if cmd == "table":
        t = table_T(args.n)
        return (export.table_text if fmt == "text" else export.table_json)(t), 0
    if cmd == "diameter":
        return f"{diameter(args.n)}\n", 0
    if cmd == "verify":
        results = verify_all(args.max_n, deep=args.deep)
        ok = all(r.passed for r in results.values())
        if fmt == "json":
            doc = {name: {"passed": r.passed, **r.detail} for name, r in results.items()}
            text = json.dumps({"passed": ok, "checks": doc}, indent=1, default=str) + "\n"
        else:
            lines = [f"{'pass' if r.passed else 'FAIL'}  {name}" for name, r in results.items()]
            failed = sum(not r.passed for r in results.values())
            lines.append(f"{len(results) - failed} passed, {failed} failed")
            text = "\n".join(lines) + "\n"
        return text, 0 if ok else EXIT_FAIL
    raise AssertionError(cmd)


def _compare_closed(max_omega: int) -> str:
    mismatches, cells = divergence_report(max_omega=max_omega)
    lines = [f"closed form vs enumeration over {cells} (omega, k) cells: {len(mismatches)} differ"]
    lines.append("omega,k,closed,enumerated")
    lines += [f"{d.omega},{d.k},{d.closed},{d.enumerated}" for d in mismatches]
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    allowed = FORMATS[args.command]
    if args.format is None:
        args.format = allowed[0]
    elif args.format not in allowed:
        parser.error(f"{args.command} supports --format {', '.join(allowed)}")
    if getattr(args, "n", 2) < 2:
        parser.error("--n must be at least 2")
    if args.command == "eset" and not (args.n >= 3 and 1 <= args.i <= args.n):
        parser.error("eset needs n >= 3 and 1 <= i <= n")
    if args.command == "verify" and args.max_n < 2:
        parser.error("--max-n must be at least 2")
    try:
        if args.command == "verify" and max(args.max_n, 9 if args.deep else 0) >= HARD_MAX_N and not args.allow_large:
            raise OracleRefused(f"n={HARD_MAX_N} needs --allow-large; larger n is never run")
        text, code = _render(args)
    except OracleRefused as exc:
        print(f"star-ics: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
