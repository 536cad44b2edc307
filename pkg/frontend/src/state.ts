/**
 * Pure game-session state and its transitions.  All rules knowledge
 * lives server-side: the reducer only records service responses, never
 * derives moves or outcomes itself.  Every transition returns a fresh
 * state object; the DOM layer re-renders from whatever it is handed.
 *
 * A session is strictly request/response on one event loop: the `busy`
 * flag is raised for the whole human-move round trip (apply-move, then
 * engine-move, then re-analyze) and all input stays disabled while it
 * is up.
 */

import type {
  AnalyzeResponse,
  ApplyMoveResponse,
  DestinationJson,
  EngineMoveResponse,
  MoveJson,
  PieceId,
  PositionJson,
  VariantName,
} from "./types.js";
import { isSquare, sameDestination, samePosition } from "./types.js";

export type Player = "human" | "engine";
export type Overlay = "off" | "heatmap";
export type GameStatus = "playing" | "over";

export interface HistoryEntry {
  by: Player;
  move: MoveJson;
  /** Position the service reported after the move was applied. */
  after: PositionJson;
}

export interface UiGameState {
  variant: VariantName;
  /** Starting position, the anchor for history replay. */
  initial: PositionJson;
  /** Current position, always verbatim from the last service response. */
  position: PositionJson;
  turn: Player;
  history: HistoryEntry[];
  overlay: Overlay;
  status: GameStatus;
  loser: Player | null;
  /** True when the opening analysis said the mover-to-be faces a P-position. */
  startedOnP: boolean;
  selected: PieceId | null;
  /**
   * Legal moves for the current position, verbatim from /api/analyze.
   * The UI only ever submits elements of this list.
   */
  legalMoves: MoveJson[];
  /** Full analysis of the current position (outcome readout), if fetched. */
  analysis: AnalyzeResponse | null;
  /** A request round trip is running; all input is disabled. */
  busy: boolean;
  toast: string | null;
}

/**
 * Start a session from a service-validated position and its analysis.
 * The human moves first unless `humanFirst` is false.  If the start is
 * already terminal (no legal moves) the game is over immediately and
 * the first mover loses.
 */
export function newGame(
  variant: VariantName,
  position: PositionJson,
  analysis: AnalyzeResponse,
  humanFirst = true,
): UiGameState {
  const firstMover: Player = humanFirst ? "human" : "engine";
  const terminal = analysis.legal_moves.length === 0;
  return {
    variant,
    initial: position,
    position,
    turn: firstMover,
    history: [],
    overlay: "off",
    status: terminal ? "over" : "playing",
    loser: terminal ? firstMover : null,
    startedOnP: analysis.grundy === 0,
    selected: null,
    legalMoves: analysis.legal_moves,
    analysis,
    busy: false,
    toast: null,
  };
}

/** Record a fresh analysis of the current position. */
export function withAnalysis(
  state: UiGameState,
  analysis: AnalyzeResponse,
): UiGameState {
  const next: UiGameState = { ...state, analysis, legalMoves: analysis.legal_moves };
  if (next.status === "playing" && analysis.legal_moves.length === 0) {
    next.status = "over";
    next.loser = next.turn;
  }
  return next;
}

function humanMayAct(state: UiGameState): boolean {
  return state.status === "playing" && state.turn === "human" && !state.busy;
}

/** Piece ids occupying a square (two when the free variant stacks them). */
export function piecesAt(
  position: PositionJson,
  col: number,
  row: number,
): PieceId[] {
  const ids: PieceId[] = [];
  const [a, b] = position.pieces;
  if (isSquare(a) && a.col === col && a.row === row) ids.push("a");
  if (isSquare(b) && b.col === col && b.row === row) ids.push("b");
  return ids;
}

/**
 * Select a piece for moving, or clear the selection with null.  No-op
 * unless it is the human's turn, nothing is in flight, and the piece is
 * on the board.
 */
export function selectPiece(
  state: UiGameState,
  piece: PieceId | null,
): UiGameState {
  if (!humanMayAct(state)) return state;
  if (piece !== null) {
    const json = piece === "a" ? state.position.pieces[0] : state.position.pieces[1];
    if (!isSquare(json)) return state;
  }
  return { ...state, selected: piece };
}

/** The service-given legal moves for one piece. */
export function movesForPiece(state: UiGameState, piece: PieceId): MoveJson[] {
  return state.legalMoves.filter((m) => m.piece === piece);
}

/** Moves available to the currently selected piece. */
export function movesForSelection(state: UiGameState): MoveJson[] {
  return state.selected === null ? [] : movesForPiece(state, state.selected);
}

/**
 * The exact move object the service offered for this piece/destination,
 * or undefined.  Moves are looked up, never constructed, so the client
 * can only submit what /api/analyze listed.
 */
export function findMove(
  state: UiGameState,
  piece: PieceId,
  destination: DestinationJson,
): MoveJson | undefined {
  return state.legalMoves.find(
    (m) => m.piece === piece && sameDestination(m.destination, destination),
  );
}

/** Raise the busy flag for a request round trip, clearing any toast. */
export function beginRequest(state: UiGameState): UiGameState {
  return { ...state, busy: true, toast: null };
}

export function endRequest(state: UiGameState): UiGameState {
  return { ...state, busy: false };
}

/**
 * Commit a successful /api/apply-move for the human.  The turn passes
 * to the engine; if the move ended the game, the engine (the mover's
 * opponent, left without a move) is the loser.
 */
export function commitHumanMove(
  state: UiGameState,
  move: MoveJson,
  response: ApplyMoveResponse,
): UiGameState {
  const history = [
    ...state.history,
    { by: "human" as const, move, after: response.position },
  ];
  return {
    ...state,
    position: response.position,
    history,
    turn: "engine",
    selected: null,
    legalMoves: [],
    analysis: null,
    status: response.terminal ? "over" : state.status,
    loser: response.terminal ? "engine" : state.loser,
  };
}

/**
 * Commit a successful /api/engine-move reply.  The endpoint does not
 * flag terminality, so the turn simply passes back; the caller's
 * follow-up analysis (withAnalysis) ends the game when the human is
 * left without a move.
 */
export function commitEngineMove(
  state: UiGameState,
  response: EngineMoveResponse,
): UiGameState {
  const history = [
    ...state.history,
    { by: "engine" as const, move: response.move, after: response.position },
  ];
  return {
    ...state,
    position: response.position,
    history,
    turn: "human",
    selected: null,
    legalMoves: [],
    analysis: null,
  };
}

/**
 * Surface a non-fatal message and release the busy flag.  This is the
 * whole recovery path for a refused move (409): nothing was committed
 * locally before the service answered, so the rollback is simply
 * keeping the pre-submission position and toasting the refusal.
 */
export function showToast(state: UiGameState, message: string): UiGameState {
  return { ...state, busy: false, toast: message };
}

export function clearToast(state: UiGameState): UiGameState {
  return state.toast === null ? state : { ...state, toast: null };
}

export function toggleOverlay(state: UiGameState): UiGameState {
  return { ...state, overlay: state.overlay === "off" ? "heatmap" : "off" };
}

/** The moves to re-apply, in order, to rebuild `position` from `initial`. */
export function replaySequence(state: UiGameState): MoveJson[] {
  return state.history.map((entry) => entry.move);
}

/**
 * Internal consistency of the recorded history: each entry's `after`
 * chains to the next, and the last equals the current position.
 */
export function historyIsCoherent(state: UiGameState): boolean {
  const last = state.history[state.history.length - 1];
  if (last !== undefined && !samePosition(last.after, state.position)) {
    return false;
  }
  return state.history.every((entry) => entry.after.variant === state.variant);
}
