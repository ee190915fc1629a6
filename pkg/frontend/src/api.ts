import type {
  ApiErrorBody,
  MovieSummary,
  ParticipantView,
  RecommendationResult,
  SessionView,
  Weights,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Error carrying the server's status and `detail` field for inline display. */
export class ApiError extends Error {
  readonly status: number;
  readonly detail: string;

  constructor(status: number, detail: string) {
    super(`HTTP ${status}: ${detail}`);
    this.status = status;
    this.detail = detail;
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let detail = response.statusText || `status ${response.status}`;
  try {
    const body = (await response.json()) as ApiErrorBody;
    if (typeof body.detail === "string") {
      detail = body.detail;
    } else if (body.detail !== undefined) {
      detail = JSON.stringify(body.detail);
    }
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, detail);
}

/** Thin typed client for the /v1 endpoints; fetch is injectable for tests. */
export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(serviceUrl: string, fetchImpl?: FetchLike) {
    this.base = serviceUrl.replace(/\/+$/, "") + "/v1";
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  listMovies(): Promise<MovieSummary[]> {
    return this.request("GET", "/movies");
  }

  createSession(id?: string, pool?: string[]): Promise<SessionView> {
    const body: Record<string, unknown> = {};
    if (id !== undefined) body.id = id;
    if (pool !== undefined) body.pool = pool;
    return this.request("POST", "/sessions", body);
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${encodeURIComponent(sessionId)}`);
  }

  addParticipant(sessionId: string, participant: ParticipantView): Promise<SessionView> {
    return this.request("POST", `/sessions/${encodeURIComponent(sessionId)}/participants`, participant);
  }

  removeParticipant(sessionId: string, participantId: string): Promise<SessionView> {
    return this.request(
      "DELETE",
      `/sessions/${encodeURIComponent(sessionId)}/participants/${encodeURIComponent(participantId)}`,
    );
  }

  updateParams(
    sessionId: string,
    params: { weights?: Weights; threshold?: number; genre_filter?: boolean },
  ): Promise<SessionView> {
    return this.request("PUT", `/sessions/${encodeURIComponent(sessionId)}/params`, params);
  }

  getRecommendation(sessionId: string): Promise<RecommendationResult> {
    return this.request("GET", `/sessions/${encodeURIComponent(sessionId)}/recommendation`);
  }
}
