/**
 * Pure view-geometry helpers: how much of the quarter-infinite board to
 * draw, what sits on each square, which squares to highlight for the
 * selected piece, and how to tint cells from a heatmap response.
 */

import type {
  HeatmapResponse,
  MoveJson,
  Outcome,
  PieceId,
  PieceJson,
  PositionJson,
} from "./types.js";
import { isDropped, isSquare, minCoord, squareKey } from "./types.js";

/** Squares shown per axis when nothing forces the window wider. */
export const DEFAULT_WINDOW = 12;
/** Empty ranks/files kept beyond the furthest piece. */
export const WINDOW_MARGIN = 1;
/** The service refuses heatmap bounds above this. */
export const HEATMAP_MAX_BOUND = 32;

/** Inclusive coordinate range drawn on both axes. */
export interface BoardWindow {
  lo: number;
  hi: number;
}

/**
 * The visible window: at least DEFAULT_WINDOW squares wide, growing on
 * demand to keep every on-board piece inside with a margin, plus any
 * extra the user requested through the expand affordance.
 */
export function boardWindow(position: PositionJson, expand = 0): BoardWindow {
  const lo = minCoord(position.variant);
  let hi = lo + DEFAULT_WINDOW - 1;
  for (const piece of position.pieces) {
    if (isSquare(piece)) {
      hi = Math.max(hi, piece.col + WINDOW_MARGIN, piece.row + WINDOW_MARGIN);
    }
  }
  return { lo, hi: hi + Math.max(0, expand) };
}

/** Piece ids currently off the board, for the tray display. */
export function trayPieces(position: PositionJson): PieceId[] {
  const ids: PieceId[] = [];
  if (isDropped(position.pieces[0])) ids.push("a");
  if (isDropped(position.pieces[1])) ids.push("b");
  return ids;
}

export interface DestinationSet {
  /** squareKey(col,row) for every square destination. */
  squares: Set<string>;
  /** True when some move drops the piece off the board. */
  off: boolean;
}

/** Where the given moves can land, split into squares and "off". */
export function destinationSet(moves: MoveJson[]): DestinationSet {
  const squares = new Set<string>();
  let off = false;
  for (const move of moves) {
    if (move.destination === "off") off = true;
    else squares.add(squareKey(move.destination.col, move.destination.row));
  }
  return { squares, off };
}

/** squareKey → outcome for every cell of a heatmap response. */
export function heatmapTints(response: HeatmapResponse): Map<string, Outcome> {
  const tints = new Map<string, Outcome>();
  for (const cell of response.cells) {
    tints.set(squareKey(cell.col, cell.row), cell.outcome);
  }
  return tints;
}

export interface HeatmapRequest {
  bound: number;
  fixedPiece: PieceJson;
  /** Which piece is held fixed (its square is not tinted). */
  fixedId: PieceId;
}

/**
 * What to ask /api/heatmap for: hold one piece fixed and tint the
 * placements of the other.  The piece the user selected is the one
 * whose placements are shown, so its partner is held fixed; with no
 * selection, piece "b" is fixed and "a" roams.  The bound covers the
 * visible window but never exceeds the service cap.
 */
export function heatmapRequest(
  position: PositionJson,
  selected: PieceId | null,
  window: BoardWindow,
): HeatmapRequest {
  const fixedId: PieceId = selected === "b" ? "a" : "b";
  const fixedPiece = fixedId === "a" ? position.pieces[0] : position.pieces[1];
  return {
    bound: Math.min(window.hi, HEATMAP_MAX_BOUND),
    fixedPiece,
    fixedId,
  };
}
