/**
 * Wire types mirroring the game service's JSON bodies, plus small
 * helpers for reading them.  The UI holds no rules knowledge of its
 * own: every legal move, outcome and successor position it displays
 * came out of one of these responses.
 */

export type VariantName = "push" | "jump" | "free" | "rook";

export const VARIANTS: readonly VariantName[] = ["push", "jump", "free", "rook"];

export interface SquareJson {
  col: number;
  row: number;
}

/** A piece is either on a square or off the board ("dropped"). */
export type PieceJson = SquareJson | { dropped: true };

export interface PositionJson {
  variant: VariantName;
  pieces: [PieceJson, PieceJson];
}

/** A move destination: a square, or "off" when the piece leaves the board. */
export type DestinationJson = SquareJson | "off";

export type PieceId = "a" | "b";

export interface MoveJson {
  piece: PieceId;
  direction: "left" | "up";
  destination: DestinationJson;
  push_effect?: { other_new: DestinationJson };
}

export type Outcome = "P" | "N";

export interface AnalyzeResponse {
  grundy: number;
  outcome: Outcome;
  closed_form: unknown;
  legal_moves: MoveJson[];
  best_moves: MoveJson[];
}

export interface ApplyMoveResponse {
  position: PositionJson;
  terminal: boolean;
  loser_if_terminal: "opponent_of_mover" | null;
}

export interface EngineMoveResponse {
  move: MoveJson;
  position: PositionJson;
  annotation: { grundy_before: number; grundy_after: number };
}

export interface HeatmapCell {
  col: number;
  row: number;
  outcome: Outcome;
  source: "closed_form" | "solver";
}

export interface HeatmapResponse {
  variant: VariantName;
  bound: number;
  fixed_piece: PieceJson | null;
  cells: HeatmapCell[];
}

export interface HealthResponse {
  ok: boolean;
}

export interface ErrorBody {
  error: string;
  message: string;
  detail?: unknown;
}

export function isDropped(piece: PieceJson): piece is { dropped: true } {
  return "dropped" in piece && piece.dropped === true;
}

export function isSquare(piece: PieceJson): piece is SquareJson {
  return !isDropped(piece);
}

/** Lowest usable coordinate: the rook board includes 0, coin boards start at 1. */
export function minCoord(variant: VariantName): number {
  return variant === "rook" ? 0 : 1;
}

/** Only the rook is barred from leaving the board (so it has no tray state). */
export function canLeaveBoard(variant: VariantName): boolean {
  return variant !== "rook";
}

export function squareKey(col: number, row: number): string {
  return `${col},${row}`;
}

export function samePiece(x: PieceJson, y: PieceJson): boolean {
  if (isDropped(x) || isDropped(y)) return isDropped(x) && isDropped(y);
  return x.col === y.col && x.row === y.row;
}

export function samePosition(x: PositionJson, y: PositionJson): boolean {
  return (
    x.variant === y.variant &&
    samePiece(x.pieces[0], y.pieces[0]) &&
    samePiece(x.pieces[1], y.pieces[1])
  );
}

export function sameDestination(x: DestinationJson, y: DestinationJson): boolean {
  if (x === "off" || y === "off") return x === "off" && y === "off";
  return x.col === y.col && x.row === y.row;
}

export function describeMove(move: MoveJson): string {
  const dest =
    move.destination === "off"
      ? "off the board"
      : `(${move.destination.col},${move.destination.row})`;
  let text = `${move.piece.toUpperCase()} ${move.direction} to ${dest}`;
  if (move.push_effect) {
    const other =
      move.push_effect.other_new === "off"
        ? "off the board"
        : `(${move.push_effect.other_new.col},${move.push_effect.other_new.row})`;
    text += `, pushing the other piece to ${other}`;
  }
  return text;
}
