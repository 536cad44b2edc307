/**
 * Thin HTTP client for the game service.  One instance allows at most
 * one request in flight at a time — the UI is a single event loop and
 * every interaction is strictly request/response, so an overlapping
 * call is a programming error and is rejected immediately rather than
 * queued.
 */

import type {
  AnalyzeResponse,
  ApplyMoveResponse,
  EngineMoveResponse,
  ErrorBody,
  HealthResponse,
  HeatmapResponse,
  MoveJson,
  PieceJson,
  PositionJson,
  VariantName,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** A non-2xx reply, carrying the service's structured error body. */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly detail: unknown;

  constructor(status: number, body: ErrorBody) {
    super(body.message);
    this.name = "ApiError";
    this.status = status;
    this.code = body.error;
    this.detail = body.detail;
  }
}

/** Thrown when a call is made while another is still in flight. */
export class BusyError extends Error {
  constructor() {
    super("a request is already in flight");
    this.name = "BusyError";
  }
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;
  private inFlight = false;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
  }

  get busy(): boolean {
    return this.inFlight;
  }

  private async request<T>(path: string, init: RequestInit): Promise<T> {
    if (this.inFlight) throw new BusyError();
    this.inFlight = true;
    try {
      const response = await this.fetchFn(this.baseUrl + path, init);
      const text = await response.text();
      let parsed: unknown;
      try {
        parsed = text ? JSON.parse(text) : {};
      } catch {
        throw new ApiError(response.status, {
          error: "bad_response",
          message: `service returned non-JSON (status ${response.status})`,
        });
      }
      if (!response.ok) {
        throw new ApiError(response.status, parsed as ErrorBody);
      }
      return parsed as T;
    } finally {
      this.inFlight = false;
    }
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  health(): Promise<HealthResponse> {
    return this.request<HealthResponse>("/api/health", { method: "GET" });
  }

  analyze(position: PositionJson): Promise<AnalyzeResponse> {
    return this.post("/api/analyze", { position });
  }

  applyMove(position: PositionJson, move: MoveJson): Promise<ApplyMoveResponse> {
    return this.post("/api/apply-move", { position, move });
  }

  engineMove(position: PositionJson): Promise<EngineMoveResponse> {
    return this.post("/api/engine-move", { position });
  }

  heatmap(
    variant: VariantName,
    bound: number,
    fixedPiece: PieceJson,
  ): Promise<HeatmapResponse> {
    return this.post("/api/heatmap", {
      variant,
      bound,
      fixed_piece: fixedPiece,
    });
  }
}
