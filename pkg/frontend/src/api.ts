/** Typed HTTP client for the planning service. Consumes only the server's
 * published JSON schemas and frame stream; errors carry the server's typed
 * payload so the UI can surface the reason non-modally. */

import type {
  ErrorPayload,
  FramePayload,
  GraphPayload,
  PlanRequest,
  PlanResponse,
  RestartResponse,
  SessionCreated,
  SessionState,
  SnapshotPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly payload: ErrorPayload,
  ) {
    super(payload.message ?? payload.type ?? `HTTP ${status}`);
  }
}

export interface CreateSessionBody {
  domain: string;
  problem: string;
  seed?: number;
  include_static?: boolean;
  wait?: boolean;
  embed?: Record<string, unknown>;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.base + path, init);
    const body = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, body as ErrorPayload);
    }
    return body as T;
  }

  private post<T>(path: string, body?: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
  }

  createSession(body: CreateSessionBody): Promise<SessionCreated> {
    return this.post("/sessions", body);
  }

  getState(id: string): Promise<SessionState> {
    return this.request(`/sessions/${id}/state`);
  }

  getGraph(id: string): Promise<GraphPayload> {
    return this.request(`/sessions/${id}/graph`);
  }

  getMetrics(id: string): Promise<Record<string, unknown>> {
    return this.request(`/sessions/${id}/metrics`);
  }

  getEmbedding(id: string, wait = true): Promise<FramePayload> {
    return this.request(`/sessions/${id}/embedding?wait=${wait}`);
  }

  getSnapshot(id: string): Promise<SnapshotPayload> {
    return this.request(`/sessions/${id}/snapshot`);
  }

  plan(id: string, req: PlanRequest): Promise<PlanResponse> {
    return this.post(`/sessions/${id}/plan`, req);
  }

  restart(id: string): Promise<RestartResponse> {
    return this.post(`/sessions/${id}/restart`);
  }

  deleteSession(id: string): Promise<unknown> {
    return this.request(`/sessions/${id}`, { method: "DELETE" });
  }

  /** Subscribe to the layout frame stream. Frames arrive in iteration order
   * and the final frame is never skipped; the stream closes itself after it.
   * Returns an unsubscribe function. */
  streamFrames(
    id: string,
    onFrame: (frame: FramePayload) => void,
    onError?: (err: unknown) => void,
  ): () => void {
    const source = new EventSource(`${this.base}/sessions/${id}/embedding/frames`);
    source.onmessage = (event) => {
      const frame = JSON.parse(event.data) as FramePayload;
      onFrame(frame);
      if (frame.final) source.close();
    };
    source.onerror = (err) => {
      source.close();
      onError?.(err);
    };
    return () => source.close();
  }
}
