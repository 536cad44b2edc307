"""Exact evaluation: values, outcomes, move selection, memo discipline."""

from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coinnim.core import (DEFAULT_PUSH_RULE, Position, PushRule, Square,
                          Variant, apply_move, legal_moves,
                          MalformedPositionError, move_text)
from coinnim.solver import (GRUNDY_SANITY_CAP, MemoCapacityError, MemoStore,
                            Outcome, best_moves, canonical_state, grundy,
                            memo_from_env, mex, outcome, pack_coords,
                            pack_piece, pack_state, solve_box,
                            successor_states, unpack_piece, unpack_state,
                            xor_sum)

from conftest import make_ref_grundy, positions_in_box


def sq(c, r):
    return Square(c, r)


def pos(a, b):
    return Position(a, b)


# ---------------------------------------------------------------------------
# mex and xor_sum
# ---------------------------------------------------------------------------

class TestMex:
    def test_examples(self):
        assert mex([]) == 0
        assert mex([0, 1, 2]) == 3
        assert mex([1, 2, 5]) == 0
        assert mex([0, 2]) == 1
        assert mex([3, 0, 1, 0]) == 2  # duplicates are harmless

    @given(st.sets(st.integers(min_value=0, max_value=200)))
    def test_mex_is_least_absent(self, values):
        m = mex(values)
        assert m not in values
        assert all(v in values for v in range(m))

    def test_xor_sum(self):
        assert xor_sum(0, 0) == 0
        assert xor_sum(5, 5) == 0
        assert xor_sum(1, 2) == 3


# ---------------------------------------------------------------------------
# Packed-state encoding
# ---------------------------------------------------------------------------

class TestPacking:
    @given(st.one_of(st.none(),
                     st.builds(Square,
                               st.integers(min_value=0, max_value=1000),
                               st.integers(min_value=0, max_value=1000))))
    def test_piece_round_trip(self, piece):
        assert unpack_piece(pack_piece(piece)) == piece

    def test_packed_order_matches_lex_order(self):
        seq = [None, sq(0, 0), sq(0, 5), sq(1, 0), sq(2, 3), sq(2, 4)]
        packed = [pack_piece(p) for p in seq]
        assert packed == sorted(packed)

    def test_state_round_trip(self):
        p = pos(sq(3, 1), None)
        assert unpack_state(pack_state(p)) == p

    def test_canonical_state_sorts_pieces(self):
        s = pack_state(pos(sq(5, 5), sq(1, 1)))
        t = pack_state(pos(sq(1, 1), sq(5, 5)))
        assert canonical_state(s) == canonical_state(t) == t

    def test_oversized_coordinates_rejected(self):
        with pytest.raises(MalformedPositionError):
            pack_piece(sq(5000, 0))

    @pytest.mark.parametrize("variant", list(Variant))
    def test_successor_states_match_move_application(self, variant):
        for position in positions_in_box(variant, 3):
            via_moves = {apply_move(position, m, variant)
                         for m in legal_moves(position, variant)}
            assert set(successor_states(position, variant)) == via_moves


# ---------------------------------------------------------------------------
# grundy / outcome: pinned values
# ---------------------------------------------------------------------------

class TestGrundyExamples:
    def test_rook_terminal_is_zero(self):
        assert grundy(pos(sq(0, 0), sq(1, 0)), Variant.ROOK) == 0
        assert outcome(pos(sq(0, 0), sq(1, 0)), Variant.ROOK) is Outcome.P

    def test_rook_diagonal_neighbor_is_one(self):
        assert grundy(pos(sq(0, 0), sq(1, 1)), Variant.ROOK) == 1
        assert outcome(pos(sq(0, 0), sq(1, 1)), Variant.ROOK) is Outcome.N

    def test_lone_coin_next_to_corner(self):
        assert grundy(pos(sq(1, 1), None), Variant.FREE) == 1
        assert grundy(pos(None, None), Variant.FREE) == 0

    def test_hand_computed_single_coin_values(self):
        # Values worked out on paper from the definition: a lone coin may
        # slide left, slide up, or drop; the empty state is terminal.
        expected = {(1, 1): 1, (2, 1): 2, (1, 2): 2, (2, 2): 1, (3, 1): 3}
        memo = MemoStore()
        for (c, r), want in expected.items():
            assert grundy(pos(sq(c, r), None), Variant.FREE, memo) == want

    def test_jump_adjacent_column_pair_is_p(self):
        assert outcome(pos(sq(1, 1), sq(1, 2)), Variant.JUMP) is Outcome.P

    def test_stacked_coins_cancel(self):
        assert grundy(pos(sq(1, 1), sq(1, 1)), Variant.FREE) == 0
        assert grundy(pos(sq(2, 1), sq(2, 1)), Variant.FREE) == 0

    def test_free_pair_xors_components(self):
        assert grundy(pos(sq(1, 1), sq(2, 1)), Variant.FREE) == 3

    def test_malformed_position_rejected(self):
        with pytest.raises(MalformedPositionError):
            grundy(pos(sq(0, 0), sq(0, 0)), Variant.ROOK)
        with pytest.raises(MalformedPositionError):
            grundy(pos(None, sq(1, 1)), Variant.ROOK)

    def test_push_rule_changes_values(self):
        p = pos(sq(2, 1), sq(1, 1))
        sweep = grundy(p, Variant.PUSH, push_rule=PushRule.SWEEP_BOTH_OFF)
        stop = grundy(p, Variant.PUSH, push_rule=PushRule.STOP_AT_EDGE)
        assert sweep != stop  # the two rule readings are distinguishable

    def test_deep_position_needs_no_recursion_limit(self):
        # depth of the move graph here far exceeds any default recursion cap
        assert grundy(pos(sq(900, 3), None), Variant.FREE) >= 0


class TestBestMoves:
    def test_winning_moves_into_the_corner_jam(self):
        moves = best_moves(pos(sq(0, 0), sq(1, 1)), Variant.ROOK)
        assert [move_text(m) for m in moves] == \
            ["B:left->(0,1)", "B:up->(1,0)"]

    def test_terminal_has_none(self):
        assert best_moves(pos(sq(0, 0), sq(1, 0)), Variant.ROOK) == []

    def test_p_position_has_none(self):
        assert best_moves(pos(sq(1, 1), sq(1, 2)), Variant.JUMP) == []

    @pytest.mark.parametrize("variant", list(Variant))
    def test_nonempty_iff_n_and_not_terminal(self, variant, small_tables):
        for position in positions_in_box(variant, 4):
            moves = best_moves(position, variant, small_tables)
            is_n = grundy(position, variant, small_tables) != 0
            has_moves = bool(legal_moves(position, variant))
            assert bool(moves) == (is_n and has_moves)
            for m in moves:
                after = apply_move(position, m, variant)
                assert grundy(after, variant, small_tables) == 0


# ---------------------------------------------------------------------------
# Agreement with the independent reference recursion
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("variant", list(Variant))
def test_grundy_matches_reference_recursion(variant, small_tables):
    ref = make_ref_grundy(variant)
    for position in positions_in_box(variant, 5):
        assert grundy(position, variant, small_tables) == ref(position), \
            position


def test_alternate_push_rule_matches_reference():
    ref = make_ref_grundy(Variant.PUSH, PushRule.STOP_AT_EDGE)
    memo = MemoStore()
    for position in positions_in_box(Variant.PUSH, 4):
        got = grundy(position, Variant.PUSH, memo,
                     push_rule=PushRule.STOP_AT_EDGE)
        assert got == ref(position), position


# ---------------------------------------------------------------------------
# Solver laws on sampled positions
# ---------------------------------------------------------------------------

def sample_positions(variant, bound, count, seed):
    rng = random.Random(seed)
    lo = variant.min_coord
    out = []
    while len(out) < count:
        coords = [rng.randint(lo, bound) for _ in range(4)]
        p = pos(sq(coords[0], coords[1]), sq(coords[2], coords[3]))
        if validate_ok(p, variant):
            out.append(p)
    return out


def validate_ok(p, variant):
    from coinnim.core import validate
    return validate(p, variant)


@pytest.mark.parametrize("variant", list(Variant))
def test_swap_symmetry_without_canonicalization(variant):
    # solved with piece order preserved, so symmetry is observed, not built in
    memo = MemoStore(canonicalize=False)
    solve_box(variant, 6, memo)
    table = memo.table(variant)
    for s, g in table.items():
        swapped = unpack_state(s).swapped()
        assert table[pack_state(swapped)] == g


@pytest.mark.parametrize("variant", list(Variant))
def test_memo_values_satisfy_defining_recursion(variant, small_tables):
    # each stored value re-derived from its successors' values
    for position in sample_positions(variant, 8, 300, seed=7):
        children = [grundy(c, variant, small_tables)
                    for c in successor_states(position, variant)]
        assert grundy(position, variant, small_tables) == mex(children)


@pytest.mark.parametrize("variant", list(Variant))
def test_outcome_local_law(variant, small_tables):
    for position in sample_positions(variant, 8, 200, seed=11):
        succ = successor_states(position, variant)
        if outcome(position, variant, small_tables) is Outcome.P:
            assert all(outcome(c, variant, small_tables) is Outcome.N
                       for c in succ)
        else:
            assert any(outcome(c, variant, small_tables) is Outcome.P
                       for c in succ)


def test_solve_box_agrees_with_point_queries():
    boxed = MemoStore()
    solve_box(Variant.ROOK, 6, boxed)
    table = boxed.table(Variant.ROOK)
    fresh = MemoStore()
    for position in positions_in_box(Variant.ROOK, 6):
        key = boxed.key(pack_state(position))
        assert table[key] == grundy(position, Variant.ROOK, fresh)


# ---------------------------------------------------------------------------
# MemoStore discipline
# ---------------------------------------------------------------------------

class TestMemoStore:
    def test_tables_keyed_by_variant_and_push_rule(self):
        memo = MemoStore()
        p = pos(sq(2, 1), sq(1, 1))
        g_sweep = grundy(p, Variant.PUSH, memo)
        g_stop = grundy(p, Variant.PUSH, memo,
                        push_rule=PushRule.STOP_AT_EDGE)
        assert g_sweep != g_stop  # rule-specific entries never collide
        assert memo.table(Variant.PUSH, PushRule.SWEEP_BOTH_OFF) is not \
            memo.table(Variant.PUSH, PushRule.STOP_AT_EDGE)

    def test_push_rule_irrelevant_for_other_variants(self):
        memo = MemoStore()
        assert memo.table(Variant.ROOK, PushRule.STOP_AT_EDGE) is \
            memo.table(Variant.ROOK, PushRule.SWEEP_BOTH_OFF)

    def test_capacity_fails_fast_point_query(self):
        memo = MemoStore(cap=10)
        with pytest.raises(MemoCapacityError, match="cap is 10"):
            grundy(pos(sq(8, 8), sq(3, 3)), Variant.ROOK, memo)

    def test_capacity_fails_fast_box_solve(self):
        memo = MemoStore(cap=50)
        with pytest.raises(MemoCapacityError):
            solve_box(Variant.ROOK, 6, memo)

    def test_capacity_allows_exact_fit(self):
        need = len(solve_box(Variant.ROOK, 3))
        memo = MemoStore(cap=need)
        solve_box(Variant.ROOK, 3, memo)  # exactly at the cap: fine
        assert len(memo) == need

    def test_memo_from_env_reads_cap(self, monkeypatch):
        monkeypatch.setenv("COINNIM_MEMO_CAP", "123")
        assert memo_from_env().cap == 123
        monkeypatch.delenv("COINNIM_MEMO_CAP")
        assert memo_from_env().cap is None
        monkeypatch.setenv("COINNIM_MEMO_CAP", "zero")
        with pytest.raises(ValueError):
            memo_from_env()
        monkeypatch.setenv("COINNIM_MEMO_CAP", "-4")
        with pytest.raises(ValueError):
            memo_from_env()

    def test_sanity_cap_is_plausible(self):
        # desk-scale values stay tiny; the cap exists as a tripwire only
        assert GRUNDY_SANITY_CAP == 1 << 16
        g = grundy(pos(sq(30, 30), sq(29, 29)), Variant.ROOK, MemoStore())
        assert g < 128
