"""Command-line interface.

Subcommands:

* ``solve FOREST.json ASSIGNMENT.json`` -- decide one instance.
  Exit status: 0 colorable, 1 not colorable, 2 input error.
* ``choosable M1,M2,... --k K`` -- exhaustive choosability.
  Exit status: 0 choosable, 1 not choosable, 3 inconclusive (budget).
* ``verify-paper [--section all|2|3|4]`` -- reproduction suite; nonzero on
  any failing check.
* ``table --m1 LO:HI --m2 LO:HI --k K`` -- closed-form status sweep as CSV,
  with optional exhaustive refinement of unknown cells under a budget.
* ``partition V1,V2,...`` -- the PARTITION reduction demo.
* ``enumerate M1,... --k K`` -- stream canonical assignments as JSON lines.
* ``construct M1,M2 --k K`` -- run the constructive colorer on a sampled or
  supplied assignment, optionally tracing the class-extraction steps.

All randomness flows from ``--seed``; outputs are deterministic under fixed
flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .model import (
    Coloring,
    ListAssignment,
    StarForest,
    is_equitable_list_coloring,
)
from . import formulas
from .choosability import (
    CHOOSABLE,
    INCONCLUSIVE,
    NOT_CHOOSABLE,
    is_equitably_k_choosable,
)
from .enumeration import sample_assignment, stream_canonical
from .greedy import theorem_main_color
from .reduction import (
    PartitionInstance,
    equitable_2colorable,
    extract_partition,
    partition_exists,
    reduce_partition,
)
from .solver import STRATEGIES, solve
from .verify import run_sections


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc


def _parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    try:
        return int(lo), int(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from exc


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        forest = StarForest.from_json_dict(_load_json(args.forest))
        lists = ListAssignment.from_json_dict(forest, _load_json(args.assignment))
        k = args.k if args.k is not None else lists.uniform_size()
        if k is None:
            raise ValueError("assignment has non-uniform list sizes; pass --k")
        outcome = solve(forest, lists, k, strategy=args.strategy)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(outcome.to_json_dict(), indent=2, sort_keys=True))
    if args.out and outcome.witness is not None:
        Path(args.out).write_text(json.dumps(outcome.witness.to_json_dict(), sort_keys=True))
    return 0 if outcome.colorable else 1


def cmd_choosable(args: argparse.Namespace) -> int:
    try:
        forest = StarForest(_parse_int_list(args.stars))
        verdict = is_equitably_k_choosable(forest, args.k, budget=args.budget, mode=args.mode)
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(verdict.to_json_dict(), indent=2, sort_keys=True))
    if args.witness_out and verdict.witness is not None:
        Path(args.witness_out).write_text(
            json.dumps(verdict.witness.to_json_dict(), sort_keys=True)
        )
    return {CHOOSABLE: 0, NOT_CHOOSABLE: 1, INCONCLUSIVE: 3}[verdict.status]


def cmd_verify_paper(args: argparse.Namespace) -> int:
    rows = run_sections(args.section, seed=args.seed)
    failed = [r for r in rows if not r["passed"]]
    if args.format == "md":
        print("| section | check | passed | detail |")
        print("|---|---|---|---|")
        for r in rows:
            print(f"| {r['section']} | {r['check']} | {'yes' if r['passed'] else 'NO'} | {r['detail']} |")
    elif args.format == "json":
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        print("section,check,passed,detail")
        for r in rows:
            detail = str(r["detail"]).replace(",", ";")
            print(f"{r['section']},{r['check']},{int(r['passed'])},{detail}")
    print(f"# {len(rows) - len(failed)}/{len(rows)} checks passed", file=sys.stderr)
    return 1 if failed else 0


def cmd_table(args: argparse.Namespace) -> int:
    lo1, hi1 = args.m1
    lo2, hi2 = args.m2
    print("m1,m2,k,status,rule")
    for m1 in range(lo1, hi1 + 1):
        for m2 in range(max(m1, lo2), hi2 + 1):
            forest = StarForest((m1, m2))
            verdict = formulas.status(forest, args.k)
            status_txt, rule = verdict.status, verdict.rule or ""
            if verdict.status == formulas.UNKNOWN and args.refine_budget:
                refined = is_equitably_k_choosable(forest, args.k, budget=args.refine_budget)
                if refined.status != INCONCLUSIVE:
                    status_txt = refined.status
                    rule = "exhaustive"
            print(f"{m1},{m2},{args.k},{status_txt},{rule}")
    return 0


def cmd_partition(args: argparse.Namespace) -> int:
    try:
        instance = PartitionInstance(_parse_int_list(args.values))
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    forest = reduce_partition(instance)
    bits = equitable_2colorable(forest)
    payload: dict = {
        "values": list(instance.values),
        "partition_exists": partition_exists(instance),
        "forest": forest.to_json_dict(),
        "orientation": None if bits is None else "".join("1" if b else "0" for b in bits),
    }
    if bits is not None and instance.total % 2 == 0:
        part_a, part_b = extract_partition(forest, bits)
        payload["parts"] = {
            "a": [instance.values[i] for i in part_a],
            "b": [instance.values[i] for i in part_b],
        }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0 if payload["partition_exists"] == (bits is not None) else 1


def cmd_enumerate(args: argparse.Namespace) -> int:
    try:
        forest = StarForest(_parse_int_list(args.stars))
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        manifest = stream_canonical(
            forest, args.k, out, palette_bound=args.palette_bound, max_classes=args.max_classes
        )
    finally:
        if args.out:
            out.close()
    print(json.dumps(manifest, sort_keys=True), file=sys.stderr)
    return 0 if manifest["complete"] else 3


def cmd_construct(args: argparse.Namespace) -> int:
    try:
        forest = StarForest(_parse_int_list(args.stars))
        if forest.n_components != 2:
            raise ValueError("construct expects exactly two stars")
        if args.assignment:
            lists = ListAssignment.from_json_dict(forest, _load_json(args.assignment))
        else:
            palette = args.palette or args.k
            lists = sample_assignment(forest, args.k, palette, args.seed)
        outcome = theorem_main_color(forest, lists, args.k)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    if args.trace and outcome.greedy is not None:
        for row in outcome.greedy.trace_rows():
            print(json.dumps(row, sort_keys=True))
    ok = is_equitable_list_coloring(forest, lists, outcome.coloring, args.k)
    print(
        json.dumps(
            {
                "path": outcome.path,
                "fallback": outcome.fallback,
                "valid": ok,
                "coloring": outcome.coloring.to_json_dict(),
            },
            indent=2,
            sort_keys=True,
        )
    )
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equistar",
        description="equitable list coloring of star forests",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide one forest/assignment instance")
    p.add_argument("forest", help="forest JSON file")
    p.add_argument("assignment", help="assignment JSON file")
    p.add_argument("--k", type=int, default=None, help="list size (default: inferred)")
    p.add_argument("--strategy", choices=STRATEGIES, default=None)
    p.add_argument("--out", default=None, help="write the witness coloring here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("choosable", help="exhaustive equitable k-choosability")
    p.add_argument("stars", help="comma-separated leaf counts, e.g. 1,3")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=None, help="classes + solver nodes")
    p.add_argument("--mode", choices=["deterministic", "fast"], default="deterministic")
    p.add_argument("--witness-out", default=None)
    p.set_defaults(func=cmd_choosable)

    p = sub.add_parser("verify-paper", help="run the reproduction checks")
    p.add_argument("--section", choices=["all", "2", "3", "4"], default="all")
    p.add_argument("--format", choices=["csv", "md", "json"], default="csv")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("table", help="closed-form status sweep as CSV")
    p.add_argument("--m1", type=_parse_range, required=True, metavar="LO:HI")
    p.add_argument("--m2", type=_parse_range, required=True, metavar="LO:HI")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--refine-budget", type=int, default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("partition", help="PARTITION reduction demo")
    p.add_argument("values", help="comma-separated positive integers")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("enumerate", help="stream canonical assignments as JSON lines")
    p.add_argument("stars")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--palette-bound", type=int, default=None)
    p.add_argument("--max-classes", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("construct", help="constructive two-star coloring")
    p.add_argument("stars")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--palette", type=int, default=None)
    p.add_argument("--assignment", default=None, help="assignment JSON file")
    p.add_argument("--trace", action="store_true", help="print extraction steps as JSON lines")
    p.set_defaults(func=cmd_construct)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
