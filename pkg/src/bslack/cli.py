"""Command line harness.

Two subcommands:

* ``bslack run``    -- one randomized trial; JSON report to stdout or a
                       file, or a ``steps,count`` histogram CSV.
* ``bslack bounds`` -- worst-case space table for the pathological B-tree
                       and Overflow-tree families plus the B-slack upper
                       bound at the same key count (CSV or JSON).

Exit codes: 0 success, 1 configuration error, 2 invariant or bound failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Optional

from .analysis import family_space, space_bounds
from .harness import TrialConfig, TrialInvariantError, run_trial
from .tree import Policy


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bslack",
        description="B-slack tree workload harness and space-bound tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one randomized trial")
    run.add_argument("--b", type=int, required=True, help="degree bound (> 4)")
    run.add_argument("--size", type=int, required=True,
                     help="key-space bound; keys are drawn from [0, size)")
    run.add_argument("--ins", type=int, default=50, dest="insert_pct",
                     help="insert percentage in phase 2 (default 50)")
    run.add_argument("--del", type=int, default=50, dest="delete_pct",
                     help="delete percentage in phase 2 (default 50)")
    run.add_argument("--ops", type=int, required=True,
                     help="number of phase-2 updates")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--policy", choices=[p.value for p in Policy],
                     default=Policy.STANDARD.value)
    run.add_argument("--queue-cap", type=int, default=64, dest="queue_capacity")
    run.add_argument("--validate-every", type=int, default=0,
                     dest="validate_every",
                     help="full structural validation every N updates (0 = off)")
    run.add_argument("--out", default=None,
                     help="output path; .json for the full report, .csv for "
                          "the histogram (default: JSON to stdout)")

    bounds = sub.add_parser("bounds", help="emit the worst-case space table")
    bounds.add_argument("--b", default="8,16,32",
                        help="comma-separated degree bounds (default 8,16,32)")
    bounds.add_argument("--min-keys", type=int, default=10 ** 6,
                        dest="min_keys")
    bounds.add_argument("--out", default=None,
                        help="output path; .csv (default stdout) or .json")
    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    config = TrialConfig(
        b=args.b,
        size=args.size,
        ops=args.ops,
        seed=args.seed,
        insert_pct=args.insert_pct,
        delete_pct=args.delete_pct,
        policy=Policy(args.policy),
        queue_capacity=args.queue_capacity,
        validate_every=args.validate_every,
    )
    try:
        report = run_trial(config)
    except TrialInvariantError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 2
    payload = report.to_json_dict()
    if args.out and args.out.endswith(".csv"):
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["steps", "count"])
            for steps in sorted(report.histogram):
                writer.writerow([steps, report.histogram[steps]])
    elif args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    else:
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    return 0 if report.bounds_ok else 2


def _bounds_rows(b_values: list[int], min_keys: int) -> list[dict]:
    rows = []
    for b in b_values:
        for family in ("btree", "overflow"):
            fs = family_space(family, b, min_keys)
            rows.append({
                "family": family,
                "b": b,
                "ratio": round(fs.ratio, 6),
                "height": fs.height,
                "n": fs.keys,
            })
        sb = space_bounds(min_keys, b)
        rows.append({
            "family": "bslack-upper-bound",
            "b": b,
            "ratio": round(sb.upper_ratio, 6),
            "height": sb.h_used,
            "n": min_keys,
        })
    return rows


def _cmd_bounds(args: argparse.Namespace) -> int:
    try:
        b_values = [int(part) for part in str(args.b).split(",") if part]
    except ValueError:
        raise ValueError(f"bad --b list: {args.b!r}")
    rows = _bounds_rows(b_values, args.min_keys)
    if args.out and args.out.endswith(".json"):
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=2)
            fh.write("\n")
        return 0
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=["family", "b", "ratio",
                                                 "height", "n"])
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_bounds(args)
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
