/**
 * History replay: re-apply the recorded moves through the service's
 * /api/apply-move, starting from the session's initial position.  The
 * session invariant is that the replayed result equals the current
 * position exactly — the UI state never drifts from what the service
 * computed.
 */

import type { ApiClient } from "./api.js";
import type { UiGameState } from "./state.js";
import { replaySequence } from "./state.js";
import type { PositionJson } from "./types.js";
import { samePosition } from "./types.js";

/** Fold the recorded moves over /api/apply-move; return the final position. */
export async function replayHistory(
  api: ApiClient,
  state: UiGameState,
): Promise<PositionJson> {
  let position = state.initial;
  for (const move of replaySequence(state)) {
    const response = await api.applyMove(position, move);
    position = response.position;
  }
  return position;
}

/** True iff replaying the history lands exactly on the current position. */
export async function historyReplaysToCurrent(
  api: ApiClient,
  state: UiGameState,
): Promise<boolean> {
  const replayed = await replayHistory(api, state);
  return samePosition(replayed, state.position);
}
