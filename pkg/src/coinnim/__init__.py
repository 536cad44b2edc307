"""Exact analysis of two-piece corner-sliding games.

Four impartial games on a quarter-infinite grid, each with two pieces
that slide left or up: a push variant, a jump-only variant, a
no-interaction variant, and a 0-based rook-cornering variant.  The
package pairs an exact Sprague-Grundy solver with constant-time
P-position classifiers and an exhaustive verification harness that
checks the classifiers against brute force; a CLI and a JSON HTTP
service sit on top.
"""

from .closed_form import (ClassifierDomainError, ROOK_TERMINAL_SET,
                          classify_position, coin_in_n0, coin_in_p0,
                          coin_in_p1, coin_nopush_p_position, has_classifier,
                          in_terminal_set, push_p_position, rook_in_n0,
                          rook_in_p1, rook_p_position)
from .core import (DEFAULT_PUSH_RULE, Direction, IllegalMoveError,
                   MalformedPositionError, Move, Piece, PieceId, Position,
                   PushRule, Square, Variant, apply_move, is_terminal,
                   legal_moves, move_from_json, move_text, move_to_json,
                   position_from_json, position_to_json, progress_measure,
                   swap_move, validate, variant_from_name)
from .solver import (GrundyOverflowError, MemoCapacityError, MemoStore,
                     Outcome, best_moves, grundy, memo_from_env, mex,
                     outcome, solve_box, xor_sum)
from .verifier import (DiscrepancyReport, Mismatch, SweepSpec,
                       calibrate_push_rules, sweep_rows,
                       verify_correspondence, verify_drop_losing,
                       verify_rook_local_law, verify_sum_theorem,
                       verify_variant, write_table_csv)

__version__ = "0.1.0"

__all__ = [
    "ClassifierDomainError", "DEFAULT_PUSH_RULE", "Direction",
    "DiscrepancyReport", "GrundyOverflowError", "IllegalMoveError",
    "MalformedPositionError", "MemoCapacityError", "MemoStore", "Mismatch",
    "Move", "Outcome", "Piece", "PieceId", "Position", "PushRule",
    "ROOK_TERMINAL_SET", "Square", "SweepSpec", "Variant", "apply_move",
    "best_moves", "calibrate_push_rules", "classify_position", "coin_in_n0",
    "coin_in_p0", "coin_in_p1", "coin_nopush_p_position", "grundy",
    "has_classifier", "in_terminal_set", "is_terminal", "legal_moves",
    "memo_from_env", "mex", "move_from_json", "move_text", "move_to_json",
    "outcome", "position_from_json", "position_to_json", "progress_measure",
    "push_p_position", "rook_in_n0", "rook_in_p1", "rook_p_position",
    "solve_box", "swap_move", "sweep_rows", "validate", "variant_from_name",
    "verify_correspondence", "verify_drop_losing", "verify_rook_local_law",
    "verify_sum_theorem", "verify_variant", "write_table_csv", "xor_sum",
]
