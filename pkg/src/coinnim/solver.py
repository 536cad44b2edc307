"""Exact game-value evaluation for the four variants.

Everything rests on the classical recursion: the value of a position is
the least nonnegative integer missing from the values of its successors,
and a position is a previous-player win exactly when that value is 0.
All four games are acyclic (every move strictly shrinks the sum of
on-board coordinates), so the recursion is well founded even though the
board itself is unbounded.

Two evaluation paths share one successor enumeration:

* :func:`grundy` resolves a single position with an explicit work list
  (no recursion-depth limit), memoized in a :class:`MemoStore`.
* :func:`solve_box` fills a store bottom-up for every valid position
  inside a coordinate box, which is what the exhaustive sweeps use.

Positions are packed into ints for the hot loops: a piece is 0 when
dropped, else ``((col << 10) | row) + 1``, and a state is
``(piece_a << 21) | piece_b``.  Packed piece order coincides with
(dropped-first, col, row) lexicographic order, so enumerating states in
increasing packed order visits every successor before the state itself.
"""

from __future__ import annotations

import os
from enum import Enum

from .core import (DEFAULT_PUSH_RULE, MalformedPositionError, Move, Piece,
                   Position, PushRule, Square, Variant, legal_moves, validate)

_CB = 10                 # coordinate bits in a packed piece
_CMASK = (1 << _CB) - 1
_PB = 2 * _CB + 1        # bits in a packed piece
_PMASK = (1 << _PB) - 1
MAX_COORD = _CMASK - 1   # packing headroom; far beyond desk scale

GRUNDY_SANITY_CAP = 1 << 16


class GrundyOverflowError(RuntimeError):
    """A computed value exceeded the sanity cap, indicating corruption."""


class MemoCapacityError(RuntimeError):
    """The memo grew past the configured entry cap."""


class Outcome(Enum):
    P = "P"   # previous player wins: value 0
    N = "N"   # next player wins: value > 0


def mex(values) -> int:
    """Least nonnegative integer missing from ``values``."""
    seen = 0
    for v in values:
        seen |= 1 << v
    return ((~seen) & (seen + 1)).bit_length() - 1


def xor_sum(g1: int, g2: int) -> int:
    """Value of a compound of two independent games."""
    return g1 ^ g2


def pack_piece(piece: Piece) -> int:
    if piece is None:
        return 0
    col, row = piece.col, piece.row
    if col > MAX_COORD or row > MAX_COORD:
        raise MalformedPositionError(
            f"coordinates above {MAX_COORD} are not supported")
    return ((col << _CB) | row) + 1


def unpack_piece(p: int) -> Piece:
    if p == 0:
        return None
    p -= 1
    return Square(p >> _CB, p & _CMASK)


def pack_state(position: Position) -> int:
    return (pack_piece(position.a) << _PB) | pack_piece(position.b)


def pack_coords(c1: int, r1: int, c2: int, r2: int) -> int:
    """Packed state for two on-board pieces; no validation."""
    return ((((c1 << _CB) | r1) + 1) << _PB) | (((c2 << _CB) | r2) + 1)


def unpack_state(s: int) -> Position:
    return Position(unpack_piece(s >> _PB), unpack_piece(s & _PMASK))


def canonical_state(s: int) -> int:
    """Piece-order-independent representative (smaller packed piece first)."""
    pa = s >> _PB
    pb = s & _PMASK
    if pa > pb:
        return (pb << _PB) | pa
    return s


# ---------------------------------------------------------------------------
# Successor enumeration on packed states.  One function per rule set, all
# appending packed successor states to ``out``.  Duplicates are harmless
# (mex is a set operation); the off-board successor of a coin is reachable
# both leftward and upward but appended once.
# ---------------------------------------------------------------------------

def _succ_rook(s: int, out: list) -> None:
    append = out.append
    pa = s >> _PB
    pb = s & _PMASK
    ea = pa - 1
    eb = pb - 1
    ca, ra = ea >> _CB, ea & _CMASK
    cb, rb = eb >> _CB, eb & _CMASK
    same_row = ra == rb
    same_col = ca == cb
    for c in range(ca):
        if same_row and c == cb:
            continue
        append(((((c << _CB) | ra) + 1) << _PB) | pb)
    for r in range(ra):
        if same_col and r == rb:
            continue
        append(((((ca << _CB) | r) + 1) << _PB) | pb)
    base = pa << _PB
    for c in range(cb):
        if same_row and c == ca:
            continue
        append(base | (((c << _CB) | rb) + 1))
    for r in range(rb):
        if same_col and r == ra:
            continue
        append(base | (((cb << _CB) | r) + 1))


def _succ_coin(s: int, out: list, blocking: bool) -> None:
    """JUMP (blocking: the other coin's square is excluded) and FREE."""
    append = out.append
    pa = s >> _PB
    pb = s & _PMASK
    if pa:
        ea = pa - 1
        ca, ra = ea >> _CB, ea & _CMASK
        if blocking and pb:
            eb = pb - 1
            cb, rb = eb >> _CB, eb & _CMASK
            same_row = ra == rb
            same_col = ca == cb
        else:
            same_row = same_col = False
            cb = rb = -1
        for c in range(1, ca):
            if same_row and c == cb:
                continue
            append(((((c << _CB) | ra) + 1) << _PB) | pb)
        for r in range(1, ra):
            if same_col and r == rb:
                continue
            append(((((ca << _CB) | r) + 1) << _PB) | pb)
        append(pb)  # dropped
    if pb:
        eb = pb - 1
        cb, rb = eb >> _CB, eb & _CMASK
        if blocking and pa:
            ea = pa - 1
            ca, ra = ea >> _CB, ea & _CMASK
            same_row = ra == rb
            same_col = ca == cb
        else:
            same_row = same_col = False
            ca = ra = -1
        base = pa << _PB
        for c in range(1, cb):
            if same_row and c == ca:
                continue
            append(base | (((c << _CB) | rb) + 1))
        for r in range(1, rb):
            if same_col and r == ra:
                continue
            append(base | (((cb << _CB) | r) + 1))
        append(base)  # dropped


def _succ_jump(s: int, out: list) -> None:
    _succ_coin(s, out, True)


def _succ_free(s: int, out: list) -> None:
    _succ_coin(s, out, False)


def _succ_push(s: int, out: list, sweep: bool) -> None:
    append = out.append
    pa = s >> _PB
    pb = s & _PMASK
    if pa:
        ea = pa - 1
        ca, ra = ea >> _CB, ea & _CMASK
        if pb:
            eb = pb - 1
            cb, rb = eb >> _CB, eb & _CMASK
        else:
            cb = rb = -1
        # leftward
        if pb and rb == ra and 0 <= cb < ca:
            shoved = ((((cb - 1) << _CB) | rb) + 1) if cb > 1 else 0
            append((((((cb << _CB) | ra) + 1)) << _PB) | shoved)
            for c in range(cb + 1, ca):
                append(((((c << _CB) | ra) + 1) << _PB) | pb)
            if sweep:
                append(0)
            elif cb > 1:
                append(((((1 << _CB) | ra) + 1) << _PB) | 0)
        else:
            for c in range(1, ca):
                append(((((c << _CB) | ra) + 1) << _PB) | pb)
            append(pb)
        # upward
        if pb and cb == ca and 0 <= rb < ra:
            shoved = ((((cb << _CB) | (rb - 1)) + 1)) if rb > 1 else 0
            append((((((ca << _CB) | rb) + 1)) << _PB) | shoved)
            for r in range(rb + 1, ra):
                append(((((ca << _CB) | r) + 1) << _PB) | pb)
            if sweep:
                append(0)
            elif rb > 1:
                append(((((ca << _CB) | 1) + 1) << _PB) | 0)
        else:
            for r in range(1, ra):
                append(((((ca << _CB) | r) + 1) << _PB) | pb)
            append(pb)
    if pb:
        eb = pb - 1
        cb, rb = eb >> _CB, eb & _CMASK
        if pa:
            ea = pa - 1
            ca, ra = ea >> _CB, ea & _CMASK
        else:
            ca = ra = -1
        base = pa << _PB
        if pa and ra == rb and 0 <= ca < cb:
            shoved = ((((ca - 1) << _CB) | ra) + 1) if ca > 1 else 0
            append((shoved << _PB) | (((ca << _CB) | rb) + 1))
            for c in range(ca + 1, cb):
                append(base | (((c << _CB) | rb) + 1))
            if sweep:
                append(0)
            elif ca > 1:
                append(((1 << _CB) | rb) + 1)
        else:
            for c in range(1, cb):
                append(base | (((c << _CB) | rb) + 1))
            append(base)
        if pa and ca == cb and 0 <= ra < rb:
            shoved = (((ca << _CB) | (ra - 1)) + 1) if ra > 1 else 0
            append((shoved << _PB) | (((cb << _CB) | ra) + 1))
            for r in range(ra + 1, rb):
                append(base | (((cb << _CB) | r) + 1))
            if sweep:
                append(0)
            elif ra > 1:
                append(((cb << _CB) | 1) + 1)
        else:
            for r in range(1, rb):
                append(base | (((cb << _CB) | r) + 1))
            append(base)


def _succ_push_sweep(s: int, out: list) -> None:
    _succ_push(s, out, True)


def _succ_push_stop(s: int, out: list) -> None:
    _succ_push(s, out, False)


def successor_fn(variant: Variant, push_rule: PushRule = DEFAULT_PUSH_RULE):
    if variant is Variant.ROOK:
        return _succ_rook
    if variant is Variant.JUMP:
        return _succ_jump
    if variant is Variant.FREE:
        return _succ_free
    if push_rule is PushRule.SWEEP_BOTH_OFF:
        return _succ_push_sweep
    return _succ_push_stop


def successor_states(position: Position, variant: Variant,
                     push_rule: PushRule = DEFAULT_PUSH_RULE) -> list[Position]:
    """Successors as positions (convenience wrapper over the packed path)."""
    out: list[int] = []
    successor_fn(variant, push_rule)(pack_state(position), out)
    return [unpack_state(s) for s in out]


# ---------------------------------------------------------------------------
# Memoized evaluation
# ---------------------------------------------------------------------------

class MemoStore:
    """Value cache shared across queries, keyed by (variant, push rule) and
    packed state.

    With ``canonicalize`` (the default) each unordered piece pair is stored
    once, which is sound exactly because values are symmetric under the
    piece swap; pass ``canonicalize=False`` to the symmetry test so it does
    not assume the property it checks.  ``cap`` bounds the total number of
    entries and evaluation fails loudly once it is hit.
    """

    def __init__(self, canonicalize: bool = True, cap: int | None = None):
        self.canonicalize = canonicalize
        self.cap = cap
        self._tables: dict[tuple, dict[int, int]] = {}

    def table(self, variant: Variant,
              push_rule: PushRule = DEFAULT_PUSH_RULE) -> dict[int, int]:
        if variant is not Variant.PUSH:
            push_rule = DEFAULT_PUSH_RULE
        return self._tables.setdefault((variant, push_rule), {})

    def key(self, s: int) -> int:
        return canonical_state(s) if self.canonicalize else s

    def __len__(self) -> int:
        return sum(len(t) for t in self._tables.values())

    def check_capacity(self) -> None:
        if self.cap is not None and len(self) > self.cap:
            raise MemoCapacityError(
                f"memo holds {len(self)} entries, cap is {self.cap}")


MEMO_CAP_ENV = "COINNIM_MEMO_CAP"


def memo_from_env(canonicalize: bool = True) -> MemoStore:
    """Fresh store honoring the entry cap in ``COINNIM_MEMO_CAP``."""
    raw = os.environ.get(MEMO_CAP_ENV)
    cap = None
    if raw:
        try:
            cap = int(raw)
        except ValueError:
            raise ValueError(
                f"{MEMO_CAP_ENV} must be an integer, got {raw!r}") from None
        if cap <= 0:
            raise ValueError(f"{MEMO_CAP_ENV} must be positive, got {cap}")
    return MemoStore(canonicalize=canonicalize, cap=cap)


def _checked(value: int) -> int:
    if value >= GRUNDY_SANITY_CAP:
        raise GrundyOverflowError(f"grundy value {value} exceeds sanity cap")
    return value


def grundy(position: Position, variant: Variant,
           memo: MemoStore | None = None,
           push_rule: PushRule = DEFAULT_PUSH_RULE) -> int:
    """Exact game value of ``position``."""
    if not validate(position, variant):
        raise MalformedPositionError("malformed position")
    if memo is None:
        memo = MemoStore()
    table = memo.table(variant, push_rule)
    succ = successor_fn(variant, push_rule)
    canonical = memo.canonicalize

    root = pack_state(position)
    if canonical:
        root = canonical_state(root)
    if root in table:
        return table[root]

    # Work-list DFS; depth is bounded by the coordinate sum, not the state
    # count, so no recursion limit applies.
    kids: list[int] = []
    succ(root, kids)
    if canonical:
        kids = [canonical_state(k) for k in kids]
    stack = [(root, kids, 0)]
    cap = memo.cap
    while stack:
        s, kids, i = stack[-1]
        while i < len(kids) and kids[i] in table:
            i += 1
        if i < len(kids):
            stack[-1] = (s, kids, i)
            child = kids[i]
            grand: list[int] = []
            succ(child, grand)
            if canonical:
                grand = [canonical_state(k) for k in grand]
            stack.append((child, grand, 0))
            continue
        seen = 0
        for k in kids:
            seen |= 1 << table[k]
        table[s] = _checked(((~seen) & (seen + 1)).bit_length() - 1)
        if cap is not None and len(memo) > cap:
            raise MemoCapacityError(
                f"memo holds {len(memo)} entries, cap is {cap}")
        stack.pop()
    return table[root]


def outcome(position: Position, variant: Variant,
            memo: MemoStore | None = None,
            push_rule: PushRule = DEFAULT_PUSH_RULE) -> Outcome:
    return Outcome.P if grundy(position, variant, memo, push_rule) == 0 \
        else Outcome.N


def best_moves(position: Position, variant: Variant,
               memo: MemoStore | None = None,
               push_rule: PushRule = DEFAULT_PUSH_RULE) -> list[Move]:
    """Legal moves whose successor has value 0, in move-list order.
    Empty exactly when the position is a previous-player win or terminal."""
    if memo is None:
        memo = MemoStore()
    winning = []
    for move in legal_moves(position, variant, push_rule):
        after = _apply_unchecked(position, move)
        if grundy(after, variant, memo, push_rule) == 0:
            winning.append(move)
    return winning


def _apply_unchecked(position: Position, move: Move) -> Position:
    # legal_moves produced the move, so skip the legality re-check.
    from .core import PieceId
    if move.piece is PieceId.A:
        a, b = move.dest, position.b
        if move.pushes_other:
            b = move.other_dest
        return Position(a, b)
    b, a = move.dest, position.a
    if move.pushes_other:
        a = move.other_dest
    return Position(a, b)


# ---------------------------------------------------------------------------
# Bottom-up box solving for exhaustive sweeps
# ---------------------------------------------------------------------------

def _pieces_in_box(variant: Variant, bound: int) -> list[int]:
    """Packed piece states within the box, ascending."""
    lo = variant.min_coord
    pieces = [] if variant is Variant.ROOK else [0]
    for c in range(lo, bound + 1):
        for r in range(lo, bound + 1):
            pieces.append(((c << _CB) | r) + 1)
    return pieces


def solve_box(variant: Variant, bound: int,
              memo: MemoStore | None = None,
              push_rule: PushRule = DEFAULT_PUSH_RULE) -> MemoStore:
    """Fill ``memo`` with the value of every valid position whose
    coordinates all lie within ``bound``, and return it.

    States are visited in increasing packed order, which tops every
    successor ahead of its parent, so each value is a plain fold over
    already-solved entries.  Positions on the box edge are still exact:
    moves only shrink coordinates, so nothing escapes the box.
    """
    if bound > MAX_COORD:
        raise ValueError(f"bound above {MAX_COORD} is not supported")
    if memo is None:
        memo = MemoStore()
    table = memo.table(variant, push_rule)
    succ = successor_fn(variant, push_rule)
    canonical = memo.canonicalize
    stacking = variant.can_land_on
    cap = memo.cap
    base_entries = len(memo) - len(table)

    pieces = _pieces_in_box(variant, bound)
    out: list[int] = []
    for ia, pa in enumerate(pieces):
        for pb in pieces[ia:] if canonical else pieces:
            if pa == pb and pa and not stacking:
                continue
            s = (pa << _PB) | pb
            if s in table:
                continue
            out.clear()
            succ(s, out)
            seen = 0
            if canonical:
                for k in out:
                    kb = k & _PMASK
                    if (k >> _PB) > kb:
                        k = (kb << _PB) | (k >> _PB)
                    seen |= 1 << table[k]
            else:
                for k in out:
                    seen |= 1 << table[k]
            table[s] = _checked(((~seen) & (seen + 1)).bit_length() - 1)
            if cap is not None and base_entries + len(table) > cap:
                raise MemoCapacityError(
                    f"memo holds {base_entries + len(table)} entries, "
                    f"cap is {cap}")
    return memo
