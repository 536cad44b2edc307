/** Compact builders for wire objects used across the unit tests. */

import type {
  AnalyzeResponse,
  ApplyMoveResponse,
  DestinationJson,
  MoveJson,
  PieceId,
  PieceJson,
  PositionJson,
  SquareJson,
  VariantName,
} from "../src/types.js";

export function sq(col: number, row: number): SquareJson {
  return { col, row };
}

export const DROPPED: PieceJson = { dropped: true };

export function pos(
  variant: VariantName,
  a: PieceJson,
  b: PieceJson,
): PositionJson {
  return { variant, pieces: [a, b] };
}

export function move(
  piece: PieceId,
  direction: "left" | "up",
  destination: DestinationJson,
  pushTo?: DestinationJson,
): MoveJson {
  const m: MoveJson = { piece, direction, destination };
  if (pushTo !== undefined) m.push_effect = { other_new: pushTo };
  return m;
}

export function analysis(
  grundy: number,
  legalMoves: MoveJson[],
  bestMoves: MoveJson[] = [],
): AnalyzeResponse {
  return {
    grundy,
    outcome: grundy === 0 ? "P" : "N",
    closed_form: "not applicable",
    legal_moves: legalMoves,
    best_moves: bestMoves,
  };
}

export function applied(
  position: PositionJson,
  terminal = false,
): ApplyMoveResponse {
  return {
    position,
    terminal,
    loser_if_terminal: terminal ? "opponent_of_mover" : null,
  };
}
