#!/usr/bin/env python3
"""Run every exhaustive check at desk scale and save the artifacts.

This is the standalone version of what the acceptance tests assert: each
closed form is swept against brute force inside its coordinate box, the
structural checks (shift correspondence, early-drop losses, xor
decomposition, solver-free local law) are run, and the push-rule
calibration table is printed.  With ``--out DIR`` every report is also
written as JSON, plus per-variant value tables as CSV when ``--tables``
is given.

Exit status is 0 only if every check is clean.
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys

from coinnim.core import Variant
from coinnim.solver import memo_from_env
from coinnim.verifier import (SweepSpec, calibrate_push_rules, sweep_rows,
                              verify_correspondence, verify_drop_losing,
                              verify_rook_local_law, verify_sum_theorem,
                              verify_variant, write_table_csv)


def describe(report) -> str:
    status = "clean" if report.clean else f"{len(report.mismatches)} MISMATCHES"
    return (f"{report.check:18s} {report.spec.variant.value:5s} "
            f"bound={report.spec.bound:<3d} total={report.total_positions:>7d} "
            f"{report.elapsed_s * 1000:8.1f}ms  {status}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=20,
                    help="sweep bound for rook/jump/correspondence/sum "
                         "(default 20)")
    ap.add_argument("--push-bound", type=int, default=12,
                    help="sweep bound for the push variant (default 12)")
    ap.add_argument("--local-law-bound", type=int, default=15,
                    help="bound for the solver-free rook law (default 15)")
    ap.add_argument("--out", type=pathlib.Path, default=None,
                    help="directory to write JSON reports into")
    ap.add_argument("--tables", action="store_true",
                    help="also export value tables as CSV (needs --out)")
    ap.add_argument("--table-bound", type=int, default=10)
    args = ap.parse_args(argv)

    memo = memo_from_env()
    reports = [
        verify_variant(SweepSpec(Variant.ROOK, args.bound), memo=memo),
        verify_variant(SweepSpec(Variant.JUMP, args.bound), memo=memo),
        verify_variant(SweepSpec(Variant.PUSH, args.push_bound), memo=memo),
        verify_correspondence(args.bound, memo),
        verify_drop_losing(args.bound, Variant.JUMP, memo=memo),
        verify_sum_theorem(args.bound, memo),
        verify_rook_local_law(args.local_law_bound),
    ]
    for report in reports:
        print(describe(report))
        for m in report.mismatches[:20]:
            print(f"    pos={m.pos} brute={m.brute} closed={m.closed}")

    counts = calibrate_push_rules(args.push_bound)
    print(f"push-rule calibration at bound {args.push_bound}: "
          + json.dumps(counts))

    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        for report in reports:
            name = f"{report.check}_{report.spec.variant.value}.json"
            report.write_json(args.out / name)
        (args.out / "push_calibration.json").write_text(
            json.dumps(counts, indent=2) + "\n", encoding="utf-8")
        if args.tables:
            for variant in Variant:
                spec = SweepSpec(variant, args.table_bound,
                                 include_dropped_states=variant.can_leave_board)
                path = args.out / f"table_{variant.value}.csv"
                write_table_csv(sweep_rows(spec, memo=memo), path)
        print(f"artifacts written to {args.out}")

    clean = all(r.clean for r in reports)
    print("ALL CLEAN" if clean else "MISMATCHES FOUND", file=sys.stderr)
    return 0 if clean else 1


if __name__ == "__main__":
    sys.exit(main())
