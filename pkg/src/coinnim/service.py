"""Stateless JSON-over-HTTP facade over the engine, solver and classifiers.

Endpoints (all JSON bodies, UTF-8):

* ``POST /api/analyze``     — value, outcome, classifier sets, move lists.
* ``POST /api/apply-move``  — successor position plus terminality.
* ``POST /api/engine-move`` — the engine's reply move with annotations.
* ``POST /api/heatmap``     — outcome of every placement of one piece
  while the other is held fixed.
* ``GET  /api/health``      — liveness probe.

Every request carries the full position, so identical bodies always get
identical answers and the server can be restarted freely mid-game.  The
shared value memo is a cache only; handlers run in one thread per
connection and the memo's get-or-insert writes are idempotent (every
writer computes the same value), so no locking is needed for
correctness.

Errors: ``{"error": code, "message": text, "detail": ...}`` with 400
``malformed_body``, 422 ``invalid_position`` / ``bound_exceeds_cap``,
409 ``illegal_move`` / ``terminal_position``, plus 404/405 for routing.
CORS is enabled for the origin in ``COINNIM_CORS_ORIGIN`` (default
``*``).
"""

from __future__ import annotations

import json
import logging
import os
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import closed_form
from .core import (IllegalMoveError, MalformedPositionError, Position,
                   Square, Variant, apply_move, is_terminal, legal_moves,
                   move_from_json, move_to_json, piece_from_json,
                   position_from_json, position_to_json, validate)
from .solver import MemoStore, best_moves, grundy, memo_from_env

log = logging.getLogger(__name__)

MAX_BODY_BYTES = 1 << 20
DEFAULT_HEATMAP_CAP = 32


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, detail=None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail

    def body(self) -> dict:
        obj = {"error": self.code, "message": self.message}
        if self.detail is not None:
            obj["detail"] = self.detail
        return obj


def _parse_position(body: dict) -> tuple[Position, Variant]:
    if not isinstance(body, dict):
        raise ApiError(400, "malformed_body", "request body must be an object")
    variant = None
    if "variant" in body:
        name = body["variant"]
        try:
            variant = Variant(name)
        except ValueError:
            raise ApiError(422, "invalid_position",
                           f"unknown variant {name!r}") from None
    pos_obj = body.get("position")
    if pos_obj is None:
        raise ApiError(400, "malformed_body", "missing 'position' field")
    try:
        return position_from_json(pos_obj, variant)
    except MalformedPositionError as exc:
        raise ApiError(422, "invalid_position", str(exc)) from None


def _closed_form_obj(position: Position, variant: Variant):
    """Per-set memberships, or the string "not applicable" outside the
    classifiers' domain (free variant, or a dropped piece)."""
    if not closed_form.has_classifier(variant) or \
            position.a is None or position.b is None:
        return "not applicable"
    t = closed_form.position_tuple(position)
    if variant is Variant.PUSH:
        return {
            "shifted_nimsum0": closed_form.push_p_position(t),
            "p_position": closed_form.push_p_position(t),
        }
    if variant is Variant.JUMP:
        return {
            "P0": closed_form.coin_in_p0(t),
            "P1": closed_form.coin_in_p1(t),
            "N0": closed_form.coin_in_n0(t),
            "p_position": closed_form.coin_nopush_p_position(t),
        }
    return {
        "nimsum0": (t[0] ^ t[1] ^ t[2] ^ t[3]) == 0,
        "P1": closed_form.rook_in_p1(t),
        "N0": closed_form.rook_in_n0(t),
        "E": closed_form.in_terminal_set(t),
        "p_position": closed_form.rook_p_position(t),
    }


class Api:
    """Endpoint logic, independent of the HTTP plumbing."""

    def __init__(self, memo: MemoStore | None = None,
                 heatmap_cap: int = DEFAULT_HEATMAP_CAP):
        self.memo = memo if memo is not None else memo_from_env()
        self.heatmap_cap = heatmap_cap

    def analyze(self, body: dict) -> dict:
        position, variant = _parse_position(body)
        g = grundy(position, variant, self.memo)
        return {
            "grundy": g,
            "outcome": "P" if g == 0 else "N",
            "closed_form": _closed_form_obj(position, variant),
            "legal_moves": [move_to_json(m)
                            for m in legal_moves(position, variant)],
            "best_moves": [move_to_json(m)
                           for m in best_moves(position, variant, self.memo)],
        }

    def apply_move(self, body: dict) -> dict:
        position, variant = _parse_position(body)
        move_obj = body.get("move")
        if move_obj is None:
            raise ApiError(400, "malformed_body", "missing 'move' field")
        try:
            move = move_from_json(move_obj)
        except MalformedPositionError as exc:
            raise ApiError(400, "malformed_body",
                           f"unreadable move: {exc}") from None
        try:
            after = apply_move(position, move, variant)
        except IllegalMoveError:
            raise ApiError(
                409, "illegal_move", "move is not legal in this position",
                detail={"legal_moves": [
                    move_to_json(m) for m in legal_moves(position, variant)]},
            ) from None
        terminal = is_terminal(after, variant)
        return {
            "position": position_to_json(after, variant),
            "terminal": terminal,
            # normal play: whoever faces the terminal position has no move
            # and loses, and that is the opponent of the player who moved.
            "loser_if_terminal": "opponent_of_mover" if terminal else None,
        }

    def engine_move(self, body: dict) -> dict:
        position, variant = _parse_position(body)
        moves = legal_moves(position, variant)
        if not moves:
            raise ApiError(409, "terminal_position",
                           "no legal moves exist; the player to move loses")
        g_before = grundy(position, variant, self.memo)
        winning = best_moves(position, variant, self.memo)
        if winning:
            move = winning[0]
        else:
            # Losing position: no move is good, so play the deterministic
            # fallback — the first legal move with the highest successor
            # value.
            best_g = -1
            move = moves[0]
            for m in moves:
                g = grundy(apply_move(position, m, variant), variant,
                           self.memo)
                if g > best_g:
                    best_g = g
                    move = m
        after = apply_move(position, move, variant)
        return {
            "move": move_to_json(move),
            "position": position_to_json(after, variant),
            "annotation": {
                "grundy_before": g_before,
                "grundy_after": grundy(after, variant, self.memo),
            },
        }

    def heatmap(self, body: dict) -> dict:
        if not isinstance(body, dict):
            raise ApiError(400, "malformed_body", "request body must be an object")
        try:
            variant = Variant(body.get("variant"))
        except ValueError:
            raise ApiError(422, "invalid_position",
                           f"unknown variant {body.get('variant')!r}") from None
        bound = body.get("bound")
        if not isinstance(bound, int) or isinstance(bound, bool) or bound < 1:
            raise ApiError(400, "malformed_body",
                           "'bound' must be a positive integer")
        if bound > self.heatmap_cap:
            raise ApiError(422, "bound_exceeds_cap",
                           f"bound {bound} exceeds cap {self.heatmap_cap}")
        try:
            fixed = piece_from_json(body.get("fixed_piece"))
        except MalformedPositionError as exc:
            raise ApiError(422, "invalid_position", str(exc)) from None
        if fixed is None and not variant.can_leave_board:
            raise ApiError(422, "invalid_position",
                           "this variant has no dropped state")
        lo = variant.min_coord
        if fixed is not None and (fixed.col < lo or fixed.row < lo):
            raise ApiError(422, "invalid_position",
                           f"coordinates below {lo} are off this board")
        cells = []
        for col in range(lo, bound + 1):
            for row in range(lo, bound + 1):
                candidate = Position(fixed, Square(col, row))
                if not validate(candidate, variant):
                    continue  # coincident placement that the rules forbid
                use_closed = (closed_form.has_classifier(variant)
                              and fixed is not None
                              and (fixed.col, fixed.row) != (col, row))
                if use_closed:
                    p = closed_form.classify_position(candidate, variant)
                    cells.append({"col": col, "row": row,
                                  "outcome": "P" if p else "N",
                                  "source": "closed_form"})
                else:
                    g = grundy(candidate, variant, self.memo)
                    cells.append({"col": col, "row": row,
                                  "outcome": "P" if g == 0 else "N",
                                  "source": "solver"})
        return {
            "variant": variant.value,
            "bound": bound,
            "fixed_piece": body.get("fixed_piece"),
            "cells": cells,
        }


_ROUTES = {
    "/api/analyze": Api.analyze,
    "/api/apply-move": Api.apply_move,
    "/api/engine-move": Api.engine_move,
    "/api/heatmap": Api.heatmap,
}


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    api: Api  # assigned by make_server
    cors_origin: str

    def log_message(self, fmt, *args):  # quiet by default
        log.debug("%s - %s", self.address_string(), fmt % args)

    def _send_json(self, status: int, obj) -> None:
        payload = json.dumps(obj).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", self.cors_origin)
        self.end_headers()
        self.wfile.write(payload)

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", self.cors_origin)
        self.send_header("Access-Control-Allow-Methods", "POST, GET, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        if self.path == "/api/health":
            self._send_json(200, {"ok": True})
        elif self.path in _ROUTES:
            self._send_json(405, {"error": "method_not_allowed",
                                  "message": "use POST"})
        else:
            self._send_json(404, {"error": "not_found",
                                  "message": f"no route {self.path}"})

    def do_POST(self):
        handler = _ROUTES.get(self.path)
        if handler is None:
            status = 405 if self.path == "/api/health" else 404
            self._send_json(status, {"error": "not_found" if status == 404
                                     else "method_not_allowed",
                                     "message": f"no POST route {self.path}"})
            return
        try:
            length = int(self.headers.get("Content-Length") or 0)
            if length > MAX_BODY_BYTES:
                raise ApiError(400, "malformed_body", "request body too large")
            raw = self.rfile.read(length)
            try:
                body = json.loads(raw.decode("utf-8")) if raw else {}
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                raise ApiError(400, "malformed_body",
                               f"body is not valid JSON: {exc}") from None
            self._send_json(200, handler(self.api, body))
        except ApiError as exc:
            self._send_json(exc.status, exc.body())
        except Exception:
            log.exception("internal error handling %s", self.path)
            self._send_json(500, {"error": "internal",
                                  "message": "internal server error"})


def make_server(host: str = "127.0.0.1", port: int = 0,
                api: Api | None = None) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {
        "api": api if api is not None else Api(),
        "cors_origin": os.environ.get("COINNIM_CORS_ORIGIN", "*"),
    })
    return ThreadingHTTPServer((host, port), handler)


def serve(host: str = "127.0.0.1", port: int = 8000) -> None:
    """Run until interrupted, printing the bound address (port 0 lets the
    OS pick)."""
    server = make_server(host, port)
    actual = server.server_address[1]
    print(f"serving on http://{host}:{actual}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
