"""Board geometry, positions, and legal-move generation for the four
two-piece corner-sliding games.

All four rule sets share one skeleton: two pieces on a quarter-infinite
grid, a move slides one piece left or up as far as desired, and under
normal play the player who cannot move loses.  The variants differ in
what happens at the board edge and when the two pieces meet:

* ``Variant.ROOK``  - 0-based board, pieces never leave it; sliding past
  the other piece (a jump) is allowed, landing on its square is not.
* ``Variant.JUMP``  - 1-based board; sliding past the left or top edge
  drops the piece permanently; jumping allowed, landing on the other
  piece is not.
* ``Variant.FREE``  - as JUMP, but the pieces ignore each other
  completely: landing on the other piece is legal, so stacks occur.
* ``Variant.PUSH``  - 1-based board, no jumping; a slide into the other
  piece shoves it to the adjacent square beyond (off the board if none
  exists), and a mover sliding off the board sweeps any piece on its
  path off with it.

Dropped pieces are represented by ``None`` and never move again.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class MalformedPositionError(ValueError):
    """Position violates the variant's well-formedness rules."""


class IllegalMoveError(ValueError):
    """Move is not legal from the given position."""


@dataclass(frozen=True, order=True)
class Square:
    """A board cell: ``col`` steps rightward, ``row`` steps downward."""

    col: int
    row: int


# A piece is either on a square or dropped off the board for good.
Piece = Square | None


@dataclass(frozen=True)
class Position:
    """Ordered pair of piece states."""

    a: Piece
    b: Piece

    def swapped(self) -> "Position":
        return Position(self.b, self.a)

    def on_board_count(self) -> int:
        return (self.a is not None) + (self.b is not None)


class Variant(Enum):
    PUSH = "push"
    JUMP = "jump"
    FREE = "free"
    ROOK = "rook"

    @property
    def can_leave_board(self) -> bool:
        return self is not Variant.ROOK

    @property
    def can_jump_over(self) -> bool:
        return self is not Variant.PUSH

    @property
    def can_land_on(self) -> bool:
        return self is Variant.FREE

    @property
    def can_push(self) -> bool:
        return self is Variant.PUSH

    @property
    def min_coord(self) -> int:
        """Smallest legal on-board coordinate (0 for ROOK, else 1)."""
        return 0 if self is Variant.ROOK else 1


class PushRule(Enum):
    """Reading of the push rule when the mover heads off the board with the
    other piece on its path.

    SWEEP_BOTH_OFF: the mover keeps going and both pieces drop.
    STOP_AT_EDGE:   the pushed piece drops, the mover halts on the edge
                    square.  Kept only so the calibration sweep can test
                    it against the default reading.
    """

    SWEEP_BOTH_OFF = "sweep_both_off"
    STOP_AT_EDGE = "stop_at_edge"


DEFAULT_PUSH_RULE = PushRule.SWEEP_BOTH_OFF


class PieceId(Enum):
    A = "a"
    B = "b"

    def other(self) -> "PieceId":
        return PieceId.B if self is PieceId.A else PieceId.A


class Direction(Enum):
    LEFT = "left"
    UP = "up"


@dataclass(frozen=True)
class Move:
    """One legal move.

    ``dest`` is the mover's new square, or ``None`` when it leaves the
    board.  ``pushes_other`` marks PUSH-variant moves that displace the
    other piece; ``other_dest`` is then its new square (``None`` = shoved
    off the board) and must stay ``None`` otherwise.
    """

    piece: PieceId
    direction: Direction
    dest: Piece
    pushes_other: bool = False
    other_dest: Piece = None


def validate(position: Position, variant: Variant) -> bool:
    """Total well-formedness predicate for ``position`` under ``variant``."""
    lo = variant.min_coord
    for piece in (position.a, position.b):
        if piece is None:
            if not variant.can_leave_board:
                return False
        elif piece.col < lo or piece.row < lo:
            return False
    both_on = position.a is not None and position.b is not None
    if both_on and not variant.can_land_on and position.a == position.b:
        return False
    return True


def _slide_moves(piece_id: PieceId, mover: Square, other: Piece,
                 variant: Variant, push_rule: PushRule) -> list[Move]:
    """Moves of one piece, LEFT block then UP block, destinations ascending
    with off-board last."""
    moves = []
    lo = variant.min_coord
    for direction in (Direction.LEFT, Direction.UP):
        if direction is Direction.LEFT:
            at, cross = mover.col, mover.row
            make = lambda v: Square(v, cross)  # noqa: E731
            ahead = other is not None and other.row == cross and other.col < at
            other_at = other.col if ahead else -1
        else:
            at, cross = mover.row, mover.col
            make = lambda v: Square(cross, v)  # noqa: E731
            ahead = other is not None and other.col == cross and other.row < at
            other_at = other.row if ahead else -1

        if variant is Variant.PUSH and ahead:
            # Contact square first (push), then the plain squares above it.
            shoved = make(other_at - 1) if other_at - 1 >= lo else None
            moves.append(Move(piece_id, direction, make(other_at),
                              pushes_other=True, other_dest=shoved))
            for v in range(other_at + 1, at):
                moves.append(Move(piece_id, direction, make(v)))
            if push_rule is PushRule.SWEEP_BOTH_OFF:
                moves.append(Move(piece_id, direction, None,
                                  pushes_other=True, other_dest=None))
            elif other_at > lo:
                # Halting on the edge square; when the other piece already
                # sits there this duplicates the contact push above.
                moves.append(Move(piece_id, direction, make(lo),
                                  pushes_other=True, other_dest=None))
        else:
            for v in range(lo, at):
                sq = make(v)
                if other is not None and sq == other and not variant.can_land_on:
                    continue
                moves.append(Move(piece_id, direction, sq))
            if variant.can_leave_board:
                moves.append(Move(piece_id, direction, None))
    return moves


def legal_moves(position: Position, variant: Variant,
                push_rule: PushRule = DEFAULT_PUSH_RULE) -> list[Move]:
    """All legal moves, piece A before B, LEFT before UP, destinations
    ascending with off-board last."""
    if not validate(position, variant):
        raise MalformedPositionError("malformed position")
    moves = []
    if position.a is not None:
        moves.extend(_slide_moves(PieceId.A, position.a, position.b,
                                  variant, push_rule))
    if position.b is not None:
        moves.extend(_slide_moves(PieceId.B, position.b, position.a,
                                  variant, push_rule))
    return moves


def apply_move(position: Position, move: Move, variant: Variant,
               push_rule: PushRule = DEFAULT_PUSH_RULE) -> Position:
    """Successor of ``position`` under ``move``; rejects illegal moves."""
    if move not in legal_moves(position, variant, push_rule):
        raise IllegalMoveError("illegal move")
    if move.piece is PieceId.A:
        a, b = move.dest, position.b
        if move.pushes_other:
            b = move.other_dest
        return Position(a, b)
    b, a = move.dest, position.a
    if move.pushes_other:
        a = move.other_dest
    return Position(a, b)


def is_terminal(position: Position, variant: Variant,
                push_rule: PushRule = DEFAULT_PUSH_RULE) -> bool:
    return not legal_moves(position, variant, push_rule)


def progress_measure(position: Position) -> int:
    """Sum of on-board coordinates; every legal move strictly decreases it,
    which makes all four games acyclic."""
    total = 0
    for piece in (position.a, position.b):
        if piece is not None:
            total += piece.col + piece.row
    return total


def swap_move(move: Move) -> Move:
    """Relabel a move for the piece-swapped position."""
    return Move(move.piece.other(), move.direction, move.dest,
                move.pushes_other, move.other_dest)


# ---------------------------------------------------------------------------
# Wire format.  Positions travel as
#   {"variant": "rook|push|jump|free",
#    "pieces": [{"col": C, "row": R} | {"dropped": true}, ...2 entries...]}
# and moves as
#   {"piece": "a|b", "direction": "left|up",
#    "destination": {"col": C, "row": R} | "off",
#    "push_effect": {"other_new": {"col": C, "row": R} | "off"}}   (optional)
# ---------------------------------------------------------------------------

def piece_to_json(piece: Piece) -> dict:
    if piece is None:
        return {"dropped": True}
    return {"col": piece.col, "row": piece.row}


def piece_from_json(obj) -> Piece:
    if not isinstance(obj, dict):
        raise MalformedPositionError("piece must be an object")
    if obj.get("dropped"):
        return None
    try:
        col, row = obj["col"], obj["row"]
    except KeyError:
        raise MalformedPositionError("piece needs col/row or dropped") from None
    if not isinstance(col, int) or not isinstance(row, int) \
            or isinstance(col, bool) or isinstance(row, bool):
        raise MalformedPositionError("col/row must be integers")
    return Square(col, row)


def position_to_json(position: Position, variant: Variant) -> dict:
    return {"variant": variant.value,
            "pieces": [piece_to_json(position.a), piece_to_json(position.b)]}


def variant_from_name(name) -> Variant:
    try:
        return Variant(name)
    except ValueError:
        raise MalformedPositionError(f"unknown variant {name!r}") from None


def position_from_json(obj, variant: Variant | None = None
                       ) -> tuple[Position, Variant]:
    """Parse and validate a position object.  ``variant`` overrides/checks
    any variant named inside the object; one of the two must be present."""
    if not isinstance(obj, dict):
        raise MalformedPositionError("position must be an object")
    if "variant" in obj:
        inner = variant_from_name(obj["variant"])
        if variant is not None and inner is not variant:
            raise MalformedPositionError(
                f"variant mismatch: {inner.value} vs {variant.value}")
        variant = inner
    if variant is None:
        raise MalformedPositionError("no variant given")
    pieces = obj.get("pieces")
    if not isinstance(pieces, list) or len(pieces) != 2:
        raise MalformedPositionError("pieces must be a list of 2 entries")
    position = Position(piece_from_json(pieces[0]), piece_from_json(pieces[1]))
    if not validate(position, variant):
        raise MalformedPositionError("malformed position")
    return position, variant


def move_to_json(move: Move) -> dict:
    dest = "off" if move.dest is None else {"col": move.dest.col,
                                            "row": move.dest.row}
    obj = {"piece": move.piece.value, "direction": move.direction.value,
           "destination": dest}
    if move.pushes_other:
        other = "off" if move.other_dest is None else \
            {"col": move.other_dest.col, "row": move.other_dest.row}
        obj["push_effect"] = {"other_new": other}
    return obj


def _dest_from_json(obj, what: str) -> Piece:
    if obj == "off":
        return None
    piece = piece_from_json(obj)
    if piece is None:
        raise MalformedPositionError(f"{what} cannot be 'dropped'")
    return piece


def move_from_json(obj) -> Move:
    if not isinstance(obj, dict):
        raise MalformedPositionError("move must be an object")
    try:
        piece = PieceId(obj.get("piece"))
        direction = Direction(obj.get("direction"))
    except ValueError:
        raise MalformedPositionError("bad piece or direction") from None
    if "destination" not in obj:
        raise MalformedPositionError("move needs a destination")
    dest = _dest_from_json(obj["destination"], "destination")
    push = obj.get("push_effect")
    if push is None:
        return Move(piece, direction, dest)
    if not isinstance(push, dict) or "other_new" not in push:
        raise MalformedPositionError("push_effect needs other_new")
    return Move(piece, direction, dest, pushes_other=True,
                other_dest=_dest_from_json(push["other_new"], "other_new"))


def move_text(move: Move) -> str:
    """Stable one-token rendering, e.g. ``A:left->(2,1)`` or
    ``B:up->off`` or ``A:left->(1,1)/push->off``."""
    dest = "off" if move.dest is None else f"({move.dest.col},{move.dest.row})"
    text = f"{move.piece.value.upper()}:{move.direction.value}->{dest}"
    if move.pushes_other:
        other = "off" if move.other_dest is None else \
            f"({move.other_dest.col},{move.other_dest.row})"
        text += f"/push->{other}"
    return text
