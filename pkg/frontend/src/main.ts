/**
 * DOM wiring: renders the current UiGameState into the page and turns
 * clicks into the request/response flows.  All game logic stays in the
 * service; all state transitions stay in state.ts.  Handlers run one
 * at a time — every await chain is guarded by the state's busy flag
 * plus a setup latch, so there is never more than one request in
 * flight.
 */

import { ApiClient, ApiError } from "./api.js";
import {
  boardWindow,
  destinationSet,
  heatmapRequest,
  trayPieces,
} from "./board.js";
import type { BoardWindow } from "./board.js";
import {
  beginRequest,
  clearToast,
  commitEngineMove,
  commitHumanMove,
  endRequest,
  findMove,
  movesForSelection,
  newGame,
  piecesAt,
  selectPiece,
  showToast,
  toggleOverlay,
  withAnalysis,
} from "./state.js";
import type { UiGameState } from "./state.js";
import { historyReplaysToCurrent } from "./replay.js";
import type {
  AnalyzeResponse,
  DestinationJson,
  Outcome,
  PieceId,
  PositionJson,
  VariantName,
} from "./types.js";
import { describeMove, minCoord, squareKey, VARIANTS } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

const apiBaseInput = el<HTMLInputElement>("api-base");
const healthDot = el<HTMLSpanElement>("health");
const variantSelect = el<HTMLSelectElement>("variant");
const colAInput = el<HTMLInputElement>("a-col");
const rowAInput = el<HTMLInputElement>("a-row");
const colBInput = el<HTMLInputElement>("b-col");
const rowBInput = el<HTMLInputElement>("b-row");
const humanFirstInput = el<HTMLInputElement>("human-first");
const startButton = el<HTMLButtonElement>("start");
const formError = el<HTMLDivElement>("form-error");
const bannerDiv = el<HTMLDivElement>("banner");
const statusDiv = el<HTMLDivElement>("status");
const overlayButton = el<HTMLButtonElement>("overlay-btn");
const expandButton = el<HTMLButtonElement>("expand-btn");
const verifyButton = el<HTMLButtonElement>("verify-btn");
const boardDiv = el<HTMLDivElement>("board");
const trayDiv = el<HTMLDivElement>("tray");
const historyList = el<HTMLOListElement>("history");
const toastDiv = el<HTMLDivElement>("toast");

let api = new ApiClient(apiBaseInput.value);
let state: UiGameState | null = null;
/** Extra squares the user asked for beyond the automatic window. */
let expand = 0;
/** Cached tints for the current position, when the overlay is on. */
let heat: Map<string, Outcome> | null = null;
/** Latch against double-starting a game while setup requests run. */
let settingUp = false;

function setState(next: UiGameState): void {
  state = next;
  render();
}

async function probeHealth(): Promise<void> {
  try {
    const reply = await api.health();
    healthDot.textContent = reply.ok ? "service ok" : "service degraded";
    healthDot.className = reply.ok ? "health ok" : "health bad";
  } catch {
    healthDot.textContent = "service unreachable";
    healthDot.className = "health bad";
  }
}

function toastFor(error: unknown): string {
  if (error instanceof ApiError) return error.message;
  return `request failed: ${String(error)}`;
}

/**
 * Fetch tints for the current position if the overlay is on.  The
 * piece held fixed is the partner of whichever piece was selected when
 * the fetch ran; the tints describe placements of the other piece.
 */
async function refreshHeat(): Promise<void> {
  heat = null;
  if (state === null || state.overlay !== "heatmap") return;
  const win = boardWindow(state.position, expand);
  const req = heatmapRequest(state.position, state.selected, win);
  try {
    const reply = await api.heatmap(state.variant, req.bound, req.fixedPiece);
    const tints = new Map<string, Outcome>();
    for (const cell of reply.cells) {
      tints.set(squareKey(cell.col, cell.row), cell.outcome);
    }
    heat = tints;
  } catch (error) {
    if (state !== null) {
      setState(showToast(state, `heatmap unavailable: ${toastFor(error)}`));
    }
  }
}

/** The engine's half of a round: move, then re-analyze for the human. */
async function engineTurn(): Promise<void> {
  if (state === null || state.status !== "playing" || state.turn !== "engine") {
    return;
  }
  try {
    const reply = await api.engineMove(state.position);
    setState(commitEngineMove(state, reply));
  } catch (error) {
    if (error instanceof ApiError && error.code === "terminal_position") {
      // The engine had no move after all: it loses.
      setState({ ...state, status: "over", loser: "engine" });
      return;
    }
    throw error;
  }
  const analysis = await api.analyze(state.position);
  setState(withAnalysis(state, analysis));
}

async function submitHumanMove(destination: DestinationJson): Promise<void> {
  if (state === null || state.selected === null || state.busy) return;
  const move = findMove(state, state.selected, destination);
  if (move === undefined) return; // not a service-offered move: never submitted
  setState(beginRequest(state));
  try {
    const reply = await api.applyMove(state.position, move);
    setState(commitHumanMove(state, move, reply));
    if (state.status === "playing") {
      await engineTurn();
    }
    await refreshHeat();
  } catch (error) {
    if (error instanceof ApiError && error.status === 409) {
      // Refused: nothing was committed locally, so the rollback is a
      // toast on the unchanged position.
      setState(showToast(state, `move refused: ${error.message}`));
      return;
    }
    setState(showToast(state, toastFor(error)));
    return;
  }
  setState(endRequest(state));
}

async function startGame(): Promise<void> {
  if (settingUp || (state !== null && state.busy)) return;
  settingUp = true;
  try {
    formError.textContent = "";
    const variant = variantSelect.value as VariantName;
    const lo = minCoord(variant);
    const coords = [colAInput, rowAInput, colBInput, rowBInput].map((input) =>
      Number.parseInt(input.value, 10),
    );
    if (coords.some((c) => !Number.isInteger(c))) {
      formError.textContent = "all four coordinates are required";
      return;
    }
    if (coords.some((c) => c < lo)) {
      formError.textContent = `coordinates for ${variant} start at ${lo}`;
      return;
    }
    const position: PositionJson = {
      variant,
      pieces: [
        { col: coords[0] as number, row: coords[1] as number },
        { col: coords[2] as number, row: coords[3] as number },
      ],
    };
    let analysis: AnalyzeResponse;
    try {
      analysis = await api.analyze(position);
    } catch (error) {
      formError.textContent =
        error instanceof ApiError && error.status === 422
          ? `invalid position: ${error.message}`
          : toastFor(error);
      return;
    }
    expand = 0;
    heat = null;
    setState(newGame(variant, position, analysis, humanFirstInput.checked));
    if (state !== null && state.status === "playing" && state.turn === "engine") {
      setState(beginRequest(state));
      try {
        await engineTurn();
        await refreshHeat();
      } catch (error) {
        setState(showToast(state, toastFor(error)));
        return;
      }
      setState(endRequest(state));
    }
  } finally {
    settingUp = false;
    render();
  }
}

function onCellClick(col: number, row: number): void {
  if (state === null || state.busy || state.status !== "playing") return;
  if (state.turn !== "human") return;
  const destinations = destinationSet(movesForSelection(state));
  if (state.selected !== null && destinations.squares.has(squareKey(col, row))) {
    void submitHumanMove({ col, row });
    return;
  }
  const here = piecesAt(state.position, col, row);
  if (here.length === 0) {
    setState(selectPiece(state, null));
    return;
  }
  // Click cycles through stacked pieces (the free variant can stack).
  const current = state.selected;
  const idx = current !== null ? here.indexOf(current) : -1;
  const next = here[(idx + 1) % here.length] as PieceId;
  setState(selectPiece(state, next === current && here.length === 1 ? null : next));
}

function renderBoard(win: BoardWindow): void {
  boardDiv.textContent = "";
  if (state === null) return;
  const size = win.hi - win.lo + 2; // +1 for the axis labels
  boardDiv.style.gridTemplateColumns = `repeat(${size}, var(--cell))`;
  const frag = document.createDocumentFragment();
  const corner = document.createElement("div");
  corner.className = "axis";
  frag.appendChild(corner);
  for (let col = win.lo; col <= win.hi; col++) {
    const label = document.createElement("div");
    label.className = "axis";
    label.textContent = String(col);
    frag.appendChild(label);
  }
  const destinations = destinationSet(movesForSelection(state));
  const interactive =
    state.status === "playing" && state.turn === "human" && !state.busy;
  for (let row = win.lo; row <= win.hi; row++) {
    const label = document.createElement("div");
    label.className = "axis";
    label.textContent = String(row);
    frag.appendChild(label);
    for (let col = win.lo; col <= win.hi; col++) {
      const cell = document.createElement("button");
      cell.type = "button";
      cell.className = "cell";
      const key = squareKey(col, row);
      const tint = heat?.get(key);
      if (state.overlay === "heatmap" && tint !== undefined) {
        cell.classList.add(tint === "P" ? "heat-p" : "heat-n");
      }
      if (destinations.squares.has(key)) cell.classList.add("target");
      const here = piecesAt(state.position, col, row);
      if (here.length > 0) {
        cell.textContent = here.map((p) => p.toUpperCase()).join("");
        cell.classList.add("occupied");
        if (state.selected !== null && here.includes(state.selected)) {
          cell.classList.add("selected");
        }
      }
      cell.disabled = !interactive;
      cell.addEventListener("click", () => onCellClick(col, row));
      frag.appendChild(cell);
    }
  }
  boardDiv.appendChild(frag);
}

function renderTray(): void {
  trayDiv.textContent = "";
  if (state === null) return;
  const label = document.createElement("span");
  label.className = "tray-label";
  label.textContent = "off the board:";
  trayDiv.appendChild(label);
  for (const id of trayPieces(state.position)) {
    const chip = document.createElement("span");
    chip.className = "chip dropped";
    chip.textContent = id.toUpperCase();
    trayDiv.appendChild(chip);
  }
  const destinations = destinationSet(movesForSelection(state));
  if (destinations.off && !state.busy && state.status === "playing") {
    const offButton = document.createElement("button");
    offButton.type = "button";
    offButton.id = "off-target";
    offButton.className = "off-target";
    offButton.textContent = "move off the board";
    offButton.addEventListener("click", () => void submitHumanMove("off"));
    trayDiv.appendChild(offButton);
  }
}

function renderStatus(): void {
  if (state === null) {
    statusDiv.textContent = "no game yet — set up a position and press start";
    bannerDiv.hidden = true;
    return;
  }
  bannerDiv.hidden = !(state.startedOnP && state.history.length === 0);
  if (state.status === "over") {
    statusDiv.textContent =
      state.loser === "engine"
        ? "game over — the engine has no move left: you win"
        : "game over — you have no move left: the engine wins";
    return;
  }
  if (state.busy) {
    statusDiv.textContent = "engine thinking…";
    return;
  }
  let readout = "";
  if (state.analysis !== null) {
    readout =
      state.analysis.outcome === "P"
        ? " (value 0 — a P-position: the mover loses with best play)"
        : ` (value ${state.analysis.grundy} — a winning move exists)`;
  }
  statusDiv.textContent =
    state.turn === "human"
      ? `your move${readout} — select a piece, then a highlighted square`
      : "engine to move";
}

function renderHistory(): void {
  historyList.textContent = "";
  if (state === null) return;
  for (const entry of state.history) {
    const item = document.createElement("li");
    const who = entry.by === "human" ? "you" : "engine";
    item.textContent = `${who}: ${describeMove(entry.move)}`;
    historyList.appendChild(item);
  }
}

function render(): void {
  overlayButton.disabled = state === null || state.busy;
  overlayButton.textContent =
    state !== null && state.overlay === "heatmap"
      ? "overlay: heatmap"
      : "overlay: off";
  expandButton.disabled = state === null || state.busy;
  verifyButton.disabled = state === null || state.busy;
  startButton.disabled = settingUp || (state !== null && state.busy);
  toastDiv.hidden = state === null || state.toast === null;
  toastDiv.textContent = state?.toast ?? "";
  renderStatus();
  if (state !== null) {
    renderBoard(boardWindow(state.position, expand));
    renderTray();
    renderHistory();
  }
}

startButton.addEventListener("click", () => void startGame());

overlayButton.addEventListener("click", () => {
  if (state === null || state.busy) return;
  setState(toggleOverlay(state));
  void refreshHeat().then(render);
});

expandButton.addEventListener("click", () => {
  if (state === null || state.busy) return;
  expand += 4;
  void refreshHeat().then(render);
});

verifyButton.addEventListener("click", () => {
  if (state === null || state.busy) return;
  const current = state;
  setState(beginRequest(current));
  void (async () => {
    try {
      const ok = await historyReplaysToCurrent(api, current);
      setState(
        showToast(
          current,
          ok
            ? "history verified: replaying every move reproduces this position"
            : "history mismatch: replay does not reproduce this position",
        ),
      );
    } catch (error) {
      setState(showToast(current, toastFor(error)));
    }
  })();
});

toastDiv.addEventListener("click", () => {
  if (state !== null) setState(clearToast(state));
});

apiBaseInput.addEventListener("change", () => {
  api = new ApiClient(apiBaseInput.value);
  void probeHealth();
});

variantSelect.addEventListener("change", () => {
  const lo = minCoord(variantSelect.value as VariantName);
  for (const input of [colAInput, rowAInput, colBInput, rowBInput]) {
    input.min = String(lo);
  }
});

for (const name of VARIANTS) {
  const option = document.createElement("option");
  option.value = name;
  option.textContent = name;
  variantSelect.appendChild(option);
}
variantSelect.value = "rook";

void probeHealth();
render();
