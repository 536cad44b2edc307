"""Acceptance suite: the package's headline guarantees, one test each.

Every test prints (and records for the end-of-run summary) a single
pass/fail line stating what was swept and at what scale, then asserts.
Bounds and budgets here are contractual: do not shrink them to make a
failure go away.
"""

from __future__ import annotations

import gc
import random
import time

from conftest import (coin_n0_family, coin_p1_family, record_criterion,
                      rook_n0_family, rook_p1_family)
from coinnim import closed_form
from coinnim.closed_form import ROOK_TERMINAL_SET
from coinnim.core import Position, Square, Variant, is_terminal
from coinnim.solver import (MemoStore, mex, solve_box, successor_fn, _CB,
                            _CMASK, _PB, _PMASK)
from coinnim.verifier import (SweepSpec, verify_correspondence,
                              verify_drop_losing, verify_rook_local_law,
                              verify_sum_theorem, verify_variant)


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def test_criterion_1_rook_closed_form_sweep():
    report = verify_variant(SweepSpec(Variant.ROOK, 20))
    ok = report.clean and report.total_positions == 194_040 \
        and report.elapsed_s < 60.0
    record_criterion(
        f"[PRIMARY] 1. rook closed form equals solver outcome on all "
        f"{report.total_positions} positions within bound 20 "
        f"({len(report.mismatches)} mismatches, {report.elapsed_s:.1f}s): "
        f"{_verdict(ok)}")
    assert report.mismatches == []
    assert report.total_positions == 194_040
    assert report.elapsed_s < 60.0


def test_criterion_2_jump_closed_form_sweep():
    report = verify_variant(SweepSpec(Variant.JUMP, 20))
    ok = report.clean and report.total_positions == 159_600 \
        and report.elapsed_s < 60.0
    record_criterion(
        f"[PRIMARY] 2. jump-variant closed form equals solver outcome on "
        f"all {report.total_positions} positions within 1..20 "
        f"({len(report.mismatches)} mismatches, {report.elapsed_s:.1f}s): "
        f"{_verdict(ok)}")
    assert report.mismatches == []
    assert report.total_positions == 159_600
    assert report.elapsed_s < 60.0


def test_criterion_3_shift_correspondence_and_drop_losing():
    memo = MemoStore()
    corr = verify_correspondence(20, memo)
    drop = verify_drop_losing(20, Variant.JUMP, memo=memo)
    ok = corr.clean and drop.clean and corr.total_positions == 159_600
    record_criterion(
        f"[PRIMARY] 3. jump outcomes equal shifted rook outcomes on "
        f"{corr.total_positions} positions in 1..20 "
        f"({len(corr.mismatches)} mismatches) and early drops always "
        f"lose at bound 20 ({len(drop.mismatches)} violations): "
        f"{_verdict(ok)}")
    assert corr.mismatches == []
    assert corr.total_positions == 159_600
    assert drop.mismatches == []


def test_criterion_4_push_rule_calibration_sweep():
    report = verify_variant(SweepSpec(Variant.PUSH, 12))
    obj = report.json_obj()  # the deterministic report is part of the deal
    ok = report.clean and report.total_positions == 20_592
    record_criterion(
        f"[PRIMARY] 4. push variant matches the shifted-nim-sum rule on "
        f"all {report.total_positions} positions within bound 12 under "
        f"the {report.push_rule.value} reading "
        f"({len(report.mismatches)} mismatches): {_verdict(ok)}")
    assert obj["total"] == 20_592
    assert obj["spec"]["push_rule"] == "sweep_both_off"
    assert report.mismatches == []


def test_criterion_5_free_variant_xor_decomposition():
    report = verify_sum_theorem(20)
    ok = report.clean and report.total_positions == 160_801
    record_criterion(
        f"[PRIMARY] 5. no-interaction values equal the xor of single-coin "
        f"values on {report.total_positions} states within 1..20, stacked "
        f"and dropped included ({len(report.mismatches)} violations): "
        f"{_verdict(ok)}")
    assert report.mismatches == []
    assert report.total_positions == 160_801


def test_criterion_6_exceptional_set_inclusions():
    start = time.perf_counter()
    checked = 0

    def shifted_nimsum(t):
        return (t[0] - 1) ^ (t[1] - 1) ^ (t[2] - 1) ^ (t[3] - 1)

    bad = []
    for t in coin_n0_family(50):
        checked += 1
        if shifted_nimsum(t) != 0 or not closed_form.coin_in_n0(t):
            bad.append(("coin_n0", t))
    for t in coin_p1_family(50):
        checked += 1
        if shifted_nimsum(t) != 1 or not closed_form.coin_in_p1(t) \
                or closed_form.coin_in_n0(t):
            bad.append(("coin_p1", t))
    for t in rook_n0_family(50):
        checked += 1
        if (t[0] ^ t[1] ^ t[2] ^ t[3]) != 0 or not closed_form.rook_in_n0(t):
            bad.append(("rook_n0", t))
    for t in rook_p1_family(50):
        checked += 1
        if (t[0] ^ t[1] ^ t[2] ^ t[3]) != 1 or not closed_form.rook_in_p1(t) \
                or closed_form.rook_in_n0(t):
            bad.append(("rook_p1", t))
    for t in ROOK_TERMINAL_SET:
        checked += 1
        pos = Position(Square(t[0], t[1]), Square(t[2], t[3]))
        if not closed_form.rook_in_p1(t) \
                or not closed_form.rook_p_position(t) \
                or not is_terminal(pos, Variant.ROOK):
            bad.append(("terminal_set", t))
    elapsed = time.perf_counter() - start

    ok = not bad and elapsed < 1.0
    record_criterion(
        f"[PRIMARY] 6. exceptional-set inclusions (removed set inside "
        f"nim-sum-0, added set inside nim-sum-1, sets disjoint, jammed "
        f"corner states terminal) over {checked} members within bound 50 "
        f"in {elapsed * 1000:.0f}ms: {_verdict(ok)}")
    assert bad == []
    assert elapsed < 1.0


def test_criterion_7_rook_local_law_without_solver():
    report = verify_rook_local_law(15)
    ok = report.clean and report.total_positions == 65_280
    record_criterion(
        f"[PRIMARY] 7. rook predicate alone satisfies the win/loss "
        f"recurrence on all {report.total_positions} positions within "
        f"bound 15, no game values computed "
        f"({len(report.mismatches)} violations): {_verdict(ok)}")
    assert report.mismatches == []
    assert report.total_positions == 65_280


def _packed_progress(s: int) -> int:
    total = 0
    for p in (s >> _PB, s & _PMASK):
        if p:
            e = p - 1
            total += (e >> _CB) + (e & _CMASK) + 1
    return total


def test_criterion_8_solver_laws_on_random_positions():
    per_variant = 10_000
    bound = 30
    failures = []
    sampled = {}
    for variant in Variant:
        memo = MemoStore(canonicalize=False)  # swap check must not be
        solve_box(variant, bound, memo)       # trivialized by keying
        table = memo.table(variant)
        succ = successor_fn(variant)
        rng = random.Random(f"solver-laws-{variant.value}")
        states = rng.sample(sorted(table), per_variant)
        sampled[variant.value] = len(states)
        out: list[int] = []
        for s in states:
            g = table[s]
            swapped = ((s & _PMASK) << _PB) | (s >> _PB)
            if table[swapped] != g:
                failures.append((variant.value, "swap", s))
            out.clear()
            succ(s, out)
            if mex(table[k] for k in out) != g:
                failures.append((variant.value, "recomputation", s))
            before = _packed_progress(s)
            if any(_packed_progress(k) >= before for k in out):
                failures.append((variant.value, "progress", s))
        del memo, table
        gc.collect()

    ok = not failures and all(n == per_variant for n in sampled.values())
    record_criterion(
        f"[PRIMARY] 8. solver laws (piece-swap symmetry, value equals mex "
        f"of successor values, strict progress decrease) hold on "
        f"{per_variant} random positions per variant within bound "
        f"{bound} ({len(failures)} failures): {_verdict(ok)}")
    assert failures == []
    assert sampled == {v.value: per_variant for v in Variant}
