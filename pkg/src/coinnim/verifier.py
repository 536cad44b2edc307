"""Exhaustive desk-scale checks of every closed-form claim.

Each check sweeps all positions inside a coordinate box, compares an
exact brute-force evaluation against the corresponding constant-time
predicate, and reports every disagreement.  Boxes are closed under play
(moves only shrink coordinates), and the solver is exact on the
unbounded board, so a windowed sweep has no edge effects: a clean sweep
is a complete proof for the window, not an approximation.

Checks provided:

* :func:`verify_variant` — brute P/N versus the closed form, per variant
  (for the rook game this also runs the solver-free local-law check).
* :func:`verify_correspondence` — jump-variant outcomes equal rook
  outcomes after shifting every coordinate down by one.
* :func:`verify_drop_losing` — voluntarily dropping one coin while the
  other remains on board always hands the opponent the win.
* :func:`verify_sum_theorem` — free-variant values decompose as the
  xor of the two single-coin values.
* :func:`verify_rook_local_law` — the rook predicate partitions
  positions so that claimed wins never step to claimed wins, and every
  claimed loss can; uses coordinate arithmetic only, no game values.
* :func:`calibrate_push_rules` — mismatch counts per candidate push
  rule, to let the sweep itself arbitrate the rule reading.

Report JSON shape:
``{"spec": {...}, "total": N, "mismatches": [{"pos": [w,x,y,z],
"brute": "P|N", "closed": "P|N"}], "elapsed_ms": T}``.  In mismatch
entries ``brute`` is what exhaustive search found and ``closed`` what
the formula predicted; a coordinate of 0 in a coin-variant entry marks
a dropped piece (on-board coin coordinates start at 1).
"""

from __future__ import annotations

import csv
import itertools
import json
import time
from dataclasses import dataclass, field

from . import closed_form
from .core import DEFAULT_PUSH_RULE, PushRule, Variant
from .solver import (MemoStore, pack_coords, solve_box, successor_fn,
                     _CB, _PB, _CMASK, _PMASK)


@dataclass(frozen=True)
class SweepSpec:
    variant: Variant
    bound: int
    include_dropped_states: bool = False

    def __post_init__(self):
        minimum = 1 if self.variant.can_land_on else 2
        if self.bound < minimum:
            raise ValueError(
                f"bound must be at least {minimum} for this variant "
                "(no two-piece positions exist below that)")


@dataclass(frozen=True)
class Mismatch:
    pos: tuple[int, int, int, int]
    brute: str
    closed: str


@dataclass
class DiscrepancyReport:
    check: str
    spec: SweepSpec
    total_positions: int
    mismatches: list[Mismatch]
    elapsed_s: float
    push_rule: PushRule | None = None

    @property
    def clean(self) -> bool:
        return not self.mismatches

    def json_obj(self) -> dict:
        spec_obj = {
            "check": self.check,
            "variant": self.spec.variant.value,
            "bound": self.spec.bound,
            "include_dropped_states": self.spec.include_dropped_states,
        }
        if self.push_rule is not None:
            spec_obj["push_rule"] = self.push_rule.value
        return {
            "spec": spec_obj,
            "total": self.total_positions,
            "mismatches": [
                {"pos": list(m.pos), "brute": m.brute, "closed": m.closed}
                for m in self.mismatches
            ],
            "elapsed_ms": round(self.elapsed_s * 1000.0, 3),
        }

    def write_json(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(self.json_obj(), fh, indent=2)
            fh.write("\n")


def _outcome_str(g: int) -> str:
    return "P" if g == 0 else "N"


def _coord_tuples(lo: int, bound: int):
    return itertools.product(range(lo, bound + 1), repeat=4)


# ---------------------------------------------------------------------------
# Closed form versus brute force, per variant
# ---------------------------------------------------------------------------

def verify_variant(spec: SweepSpec,
                   push_rule: PushRule = DEFAULT_PUSH_RULE,
                   memo: MemoStore | None = None) -> DiscrepancyReport:
    """Compare brute-force P/N against the variant's closed form on every
    two-on-board position in the box."""
    variant = spec.variant
    if variant not in closed_form.P_PREDICATES:
        raise ValueError(
            "no per-position closed form for this variant; "
            "use verify_sum_theorem for the no-interaction game")
    predicate = closed_form.P_PREDICATES[variant]
    start = time.perf_counter()
    memo = solve_box(variant, spec.bound, memo, push_rule)
    table = memo.table(variant, push_rule)
    key = memo.key

    total = 0
    mismatches = []
    lo = variant.min_coord
    for t in _coord_tuples(lo, spec.bound):
        w, x, y, z = t
        if w == y and x == z:
            continue
        total += 1
        brute = table[key(pack_coords(w, x, y, z))] == 0
        closed = predicate(t)
        if brute != closed:
            mismatches.append(Mismatch(
                t, _outcome_str(0 if brute else 1),
                _outcome_str(0 if closed else 1)))
    if variant is Variant.ROOK:
        law = _rook_local_law_mismatches(spec.bound)
        mismatches = sorted(set(mismatches) | set(law),
                            key=lambda m: (m.pos, m.brute, m.closed))
    return DiscrepancyReport(
        "closed_form_sweep", spec, total, mismatches,
        time.perf_counter() - start,
        push_rule if variant is Variant.PUSH else None)


def calibrate_push_rules(bound: int) -> dict[str, int]:
    """Mismatch count of the push closed form under each candidate push
    rule; the rule reading that the theorem arbitrates for is the one
    with a clean sweep."""
    spec = SweepSpec(Variant.PUSH, bound)
    return {
        rule.value: len(verify_variant(spec, rule).mismatches)
        for rule in PushRule
    }


# ---------------------------------------------------------------------------
# Jump <-> rook correspondence (uniform -1 shift)
# ---------------------------------------------------------------------------

def verify_correspondence(bound: int,
                          memo: MemoStore | None = None) -> DiscrepancyReport:
    """Jump-variant outcomes equal rook outcomes of the shifted position."""
    spec = SweepSpec(Variant.JUMP, bound)
    start = time.perf_counter()
    memo = solve_box(Variant.JUMP, bound, memo)
    memo = solve_box(Variant.ROOK, bound - 1, memo)
    jump_table = memo.table(Variant.JUMP)
    rook_table = memo.table(Variant.ROOK)
    key = memo.key

    total = 0
    mismatches = []
    for t in _coord_tuples(1, bound):
        w, x, y, z = t
        if w == y and x == z:
            continue
        total += 1
        jump_p = jump_table[key(pack_coords(w, x, y, z))] == 0
        rook_p = rook_table[key(pack_coords(w - 1, x - 1, y - 1, z - 1))] == 0
        if jump_p != rook_p:
            mismatches.append(Mismatch(
                t, _outcome_str(0 if jump_p else 1),
                _outcome_str(0 if rook_p else 1)))
    return DiscrepancyReport("correspondence", spec, total, mismatches,
                             time.perf_counter() - start)


# ---------------------------------------------------------------------------
# Dropping a coin while the other stays on board loses
# ---------------------------------------------------------------------------

def verify_drop_losing(bound: int, variant: Variant,
                       push_rule: PushRule = DEFAULT_PUSH_RULE,
                       memo: MemoStore | None = None) -> DiscrepancyReport:
    """From every two-on-board position, every move that leaves exactly
    one piece on board must produce a next-player win (the mover has
    thrown the game); violations are reported against the pre-move
    position."""
    if variant.min_coord != 1:
        raise ValueError("drop moves exist only in the coin variants")
    spec = SweepSpec(variant, bound)
    start = time.perf_counter()
    memo = solve_box(variant, bound, memo, push_rule)
    table = memo.table(variant, push_rule)
    key = memo.key
    succ = successor_fn(variant, push_rule)

    total = 0
    mismatches = []
    out: list[int] = []
    for t in _coord_tuples(1, bound):
        w, x, y, z = t
        if w == y and x == z:
            continue
        total += 1
        out.clear()
        succ(pack_coords(w, x, y, z), out)
        for s in out:
            pa = s >> _PB
            pb = s & _PMASK
            if (pa == 0) == (pb == 0):
                continue  # both on board, or both dropped
            if table[key(s)] == 0:
                mismatches.append(Mismatch(t, "P", "N"))
                break
    return DiscrepancyReport("drop_losing", spec, total, mismatches,
                             time.perf_counter() - start)


# ---------------------------------------------------------------------------
# Free variant: value of the pair = xor of the single-coin values
# ---------------------------------------------------------------------------

def verify_sum_theorem(bound: int,
                       memo: MemoStore | None = None) -> DiscrepancyReport:
    """Free-variant value of every two-coin state (stacking allowed,
    dropped pieces included) equals the xor of each coin's value played
    alone."""
    spec = SweepSpec(Variant.FREE, bound, include_dropped_states=True)
    start = time.perf_counter()
    memo = solve_box(Variant.FREE, bound, memo)
    table = memo.table(Variant.FREE)
    key = memo.key

    coords = [(0, 0)] + [(c, r) for c in range(1, bound + 1)
                         for r in range(1, bound + 1)]
    packed = {cr: (0 if cr == (0, 0) else ((cr[0] << _CB) | cr[1]) + 1)
              for cr in coords}

    total = 0
    mismatches = []
    for (w, x) in coords:
        pa = packed[(w, x)]
        alone_a = table[key(pa << _PB)]
        for (y, z) in coords:
            pb = packed[(y, z)]
            total += 1
            combined = table[key((pa << _PB) | pb)]
            alone_b = table[key(pb << _PB)]
            if combined != alone_a ^ alone_b:
                mismatches.append(Mismatch(
                    (w, x, y, z), _outcome_str(combined),
                    _outcome_str(alone_a ^ alone_b)))
    return DiscrepancyReport("sum_decomposition", spec, total, mismatches,
                             time.perf_counter() - start)


# ---------------------------------------------------------------------------
# Rook local law, from coordinate arithmetic alone
# ---------------------------------------------------------------------------

def _rook_successor_tuples(x: int, y: int, z: int, w: int):
    """Successor tuples of a rook position, written out directly so this
    check shares no move code with the game engine or the solver."""
    out = []
    for c in range(x):
        if c == z and y == w:
            continue
        out.append((c, y, z, w))
    for r in range(y):
        if r == w and x == z:
            continue
        out.append((x, r, z, w))
    for c in range(z):
        if c == x and w == y:
            continue
        out.append((x, y, c, w))
    for r in range(w):
        if r == y and z == x:
            continue
        out.append((x, y, z, r))
    return out


def _rook_local_law_mismatches(bound: int) -> list[Mismatch]:
    pred = {}
    for t in _coord_tuples(0, bound):
        if (t[0], t[1]) != (t[2], t[3]):
            pred[t] = closed_form.rook_p_position(t)
    mismatches = []
    for t, claimed_p in pred.items():
        succ_has_p = any(pred[s] for s in _rook_successor_tuples(*t))
        if claimed_p and succ_has_p:
            # claims P yet can step to a claimed P: behaves as N
            mismatches.append(Mismatch(t, "N", "P"))
        elif not claimed_p and not succ_has_p:
            # claims N yet has no claimed-P successor: behaves as P
            mismatches.append(Mismatch(t, "P", "N"))
    return mismatches


def verify_rook_local_law(bound: int) -> DiscrepancyReport:
    """Check, without computing any game value, that the rook predicate
    obeys the defining recurrence of previous-player wins: a claimed P
    has no move to a claimed P, and a claimed N has one.  Since the box
    is closed under play and terminal positions satisfy the predicate,
    this recurrence pins the predicate to the true outcome function."""
    spec = SweepSpec(Variant.ROOK, bound)
    start = time.perf_counter()
    total = (bound + 1) ** 4 - (bound + 1) ** 2
    mismatches = _rook_local_law_mismatches(bound)
    return DiscrepancyReport("local_law", spec, total, mismatches,
                             time.perf_counter() - start)


# ---------------------------------------------------------------------------
# Grundy/outcome table export
# ---------------------------------------------------------------------------

CSV_COLUMNS = ("w", "x", "y", "z", "grundy", "brute", "closed", "agree")


def sweep_rows(spec: SweepSpec,
               push_rule: PushRule = DEFAULT_PUSH_RULE,
               memo: MemoStore | None = None):
    """Rows for the CSV table export.

    The rook table covers the full coordinate box including coincident
    tuples, flagged ``agree=invalid`` (downstream plots want a dense
    grid).  Coin variants cover their valid states: distinct on-board
    tuples, all tuples for the stacking-allowed free variant, plus
    dropped states (coordinate 0) when the spec asks for them.
    """
    variant = spec.variant
    memo = solve_box(variant, spec.bound, memo, push_rule)
    table = memo.table(variant, push_rule)
    key = memo.key
    predicate = closed_form.P_PREDICATES.get(variant)
    lo = variant.min_coord
    full_grid = variant is Variant.ROOK
    stacking = variant.can_land_on
    sweep_lo = 0 if (spec.include_dropped_states and lo == 1) else lo

    for t in itertools.product(range(sweep_lo, spec.bound + 1), repeat=4):
        w, x, y, z = t
        if lo == 1 and ((w == 0) != (x == 0) or (y == 0) != (z == 0)):
            continue  # a dropped piece is (0, 0), never half-dropped
        on_board = lo == 0 or (w > 0 and y > 0)
        coincident = (w, x) == (y, z) and (lo == 0 or w > 0)
        if coincident and not stacking:
            if full_grid:
                yield {"w": w, "x": x, "y": y, "z": z, "grundy": "",
                       "brute": "", "closed": "", "agree": "invalid"}
            continue
        pa = 0 if (lo == 1 and w == 0) else ((w << _CB) | x) + 1
        pb = 0 if (lo == 1 and y == 0) else ((y << _CB) | z) + 1
        g = table[key((pa << _PB) | pb)]
        row = {"w": w, "x": x, "y": y, "z": z, "grundy": g,
               "brute": _outcome_str(g), "closed": "", "agree": ""}
        if predicate is not None and on_board and not coincident:
            closed = predicate(t)
            row["closed"] = _outcome_str(0 if closed else 1)
            row["agree"] = "yes" if (g == 0) == closed else "no"
        yield row


def write_table_csv(rows, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
