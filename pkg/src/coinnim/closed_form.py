"""Constant-time P-position classifiers for push, jump and rook games.

Each classifier decides previous-player-win membership from coordinate
arithmetic alone — no game-tree search.  The characterizations:

* push: the coordinates, each shifted down by one, have nim-sum zero.
* jump: the shifted-nim-zero set, plus orthogonally adjacent pairs whose
  unequal coordinates are (odd, odd+1), minus diagonally adjacent pairs
  that are (odd, odd+1) on both axes.
* rook (0-based board): nim-sum zero of the raw coordinates, plus
  orthogonally adjacent pairs whose unequal coordinates are
  (even, even+1), minus diagonally adjacent pairs that are
  (even, even+1) on both axes.

The jump and rook characterizations coincide under a uniform -1 shift of
every coordinate; both facts are exercised by the verification sweeps,
which compare every one of these predicates against brute force.

Classifiers are defined only on two-on-board states: tuples with a
dropped piece, coincident pieces, or coordinates below the board minimum
are refused rather than guessed at.
"""

from __future__ import annotations

from .core import Position, Variant

CLASSIFIER_DOMAIN_MESSAGE = "classifier defined on two-on-board states only"

ROOK_TERMINAL_SET = frozenset(
    {(0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0)})


class ClassifierDomainError(ValueError):
    """Raised for tuples outside the classifiers' domain."""


def _check(t, lo: int) -> tuple[int, int, int, int]:
    try:
        w, x, y, z = t
    except (TypeError, ValueError):
        raise ClassifierDomainError(CLASSIFIER_DOMAIN_MESSAGE) from None
    for v in (w, x, y, z):
        if not isinstance(v, int) or isinstance(v, bool) or v < lo:
            raise ClassifierDomainError(CLASSIFIER_DOMAIN_MESSAGE)
    if (w, x) == (y, z):
        raise ClassifierDomainError(CLASSIFIER_DOMAIN_MESSAGE)
    return w, x, y, z


def _adjacent_max_even(u: int, v: int) -> bool:
    """u and v are consecutive and the larger one is even."""
    return abs(u - v) == 1 and max(u, v) % 2 == 0


def _adjacent_min_even(u: int, v: int) -> bool:
    """u and v are consecutive and the smaller one is even."""
    return abs(u - v) == 1 and min(u, v) % 2 == 0


# ---------------------------------------------------------------------------
# Coin games (1-based coordinates; piece one at (w, x), piece two at (y, z))
# ---------------------------------------------------------------------------

def push_p_position(t) -> bool:
    w, x, y, z = _check(t, 1)
    return (w - 1) ^ (x - 1) ^ (y - 1) ^ (z - 1) == 0


def coin_in_p0(t) -> bool:
    return push_p_position(t)


def coin_in_p1(t) -> bool:
    w, x, y, z = _check(t, 1)
    return (w == y and _adjacent_max_even(x, z)) or \
           (x == z and _adjacent_max_even(w, y))


def coin_in_n0(t) -> bool:
    w, x, y, z = _check(t, 1)
    return _adjacent_max_even(w, y) and _adjacent_max_even(x, z)


def coin_nopush_p_position(t) -> bool:
    return (coin_in_p0(t) or coin_in_p1(t)) and not coin_in_n0(t)


# ---------------------------------------------------------------------------
# Rook game (0-based coordinates; rook one at (x, y), rook two at (z, w))
# ---------------------------------------------------------------------------

def rook_in_p1(t) -> bool:
    x, y, z, w = _check(t, 0)
    return (y == w and _adjacent_min_even(x, z)) or \
           (x == z and _adjacent_min_even(y, w))


def rook_in_n0(t) -> bool:
    x, y, z, w = _check(t, 0)
    return _adjacent_min_even(x, z) and _adjacent_min_even(y, w)


def rook_p_position(t) -> bool:
    x, y, z, w = _check(t, 0)
    return (x ^ y ^ z ^ w == 0 or rook_in_p1(t)) and not rook_in_n0(t)


def in_terminal_set(t) -> bool:
    return tuple(_check(t, 0)) in ROOK_TERMINAL_SET


# ---------------------------------------------------------------------------
# Position-level bridge
# ---------------------------------------------------------------------------

def position_tuple(position: Position) -> tuple[int, int, int, int]:
    """(col, row, col, row) of the two pieces; refuses dropped pieces."""
    if position.a is None or position.b is None:
        raise ClassifierDomainError(CLASSIFIER_DOMAIN_MESSAGE)
    return (position.a.col, position.a.row, position.b.col, position.b.row)


P_PREDICATES = {
    Variant.PUSH: push_p_position,
    Variant.JUMP: coin_nopush_p_position,
    Variant.ROOK: rook_p_position,
}


def has_classifier(variant: Variant) -> bool:
    return variant in P_PREDICATES


def classify_position(position: Position, variant: Variant) -> bool:
    """True iff the closed form puts ``position`` in the P set.

    Raises :class:`ClassifierDomainError` when no closed form covers the
    variant or the position has a dropped piece.
    """
    if variant not in P_PREDICATES:
        raise ClassifierDomainError(
            f"no closed-form classifier for variant {variant.value!r}")
    return P_PREDICATES[variant](position_tuple(position))
