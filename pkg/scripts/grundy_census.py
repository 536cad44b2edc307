#!/usr/bin/env python3
"""Tabulate game-value frequencies inside a coordinate box.

Useful for eyeballing how a variant's value landscape behaves as the
box grows: the share of previous-player wins, how large values get, and
whether the closed form (where one exists) stays in full agreement with
the solved table.

    python3 scripts/grundy_census.py --variant rook --bound 15
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from coinnim import closed_form
from coinnim.core import PushRule, Variant
from coinnim.solver import memo_from_env, pack_coords, solve_box


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--variant", required=True,
                    choices=[v.value for v in Variant])
    ap.add_argument("--bound", type=int, default=15)
    ap.add_argument("--push-rule", choices=[r.value for r in PushRule],
                    default=PushRule.SWEEP_BOTH_OFF.value)
    args = ap.parse_args(argv)

    variant = Variant(args.variant)
    push_rule = PushRule(args.push_rule)
    memo = solve_box(variant, args.bound, memo_from_env(), push_rule)
    table = memo.table(variant, push_rule)
    key = memo.key
    predicate = closed_form.P_PREDICATES.get(variant)

    lo = variant.min_coord
    census: Counter[int] = Counter()
    disagreements = 0
    coords = range(lo, args.bound + 1)
    for w in coords:
        for x in coords:
            for y in coords:
                for z in coords:
                    if w == y and x == z and not variant.can_land_on:
                        continue
                    g = table[key(pack_coords(w, x, y, z))]
                    census[g] += 1
                    if predicate is not None \
                            and predicate((w, x, y, z)) != (g == 0):
                        disagreements += 1

    total = sum(census.values())
    print(f"variant={variant.value} bound={args.bound} "
          f"positions={total} max_value={max(census)}")
    for g in sorted(census):
        share = census[g] / total
        print(f"  value {g:3d}: {census[g]:>8d}  {share:7.2%}")
    print(f"previous-player wins: {census[0]} "
          f"({census[0] / total:.2%} of positions)")
    if predicate is not None:
        print(f"closed-form disagreements: {disagreements}")
        return 0 if disagreements == 0 else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
