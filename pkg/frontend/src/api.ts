/**
 * Typed client for the session HTTP/JSON protocol.
 *
 * One method per endpoint, no caching, no local state: callers receive the
 * server's JSON verbatim. Non-2xx responses become ApiError with the
 * server's detail string; transport failures bubble up unchanged so the
 * caller can tell "the server said no" from "the server never answered".
 */

export interface TranscriptRow {
  price: string;
  response: string;
}

export interface WitnessDocument {
  kind: string;
  note?: string;
  [key: string]: unknown;
}

export interface ViolationDocument {
  axiom: string;
  verdict: string;
  witnesses: WitnessDocument[];
  undecided?: unknown[];
  detail?: Record<string, unknown>;
}

export interface JudgmentDocument {
  left: string;
  right: string;
  rel: string;
}

export interface SessionReport {
  session_id: string;
  event_description: string;
  status: "active" | "converged" | "abandoned";
  interval: { lo: string; hi: string };
  width: string;
  target_width: string;
  payoff_scale: string;
  answers: number;
  transcript: TranscriptRow[];
  estimate: string | null;
  fair_price: string | null;
  violations: ViolationDocument[];
  judgments?: JudgmentDocument[];
}

export interface OfferQuery {
  price: string;
  money_price: string;
  payoff: string;
  framing: string;
}

export interface CreateResponse {
  id: string;
  report: SessionReport;
}

export interface SessionConfig {
  event_description: string;
  target_width?: string;
  payoff_scale?: string;
  problem?: unknown;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`request failed (${status}): ${detail}`);
    this.name = "ApiError";
  }
}

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiClient {
  private readonly fetchImpl: FetchLike;

  constructor(
    readonly baseUrl: string,
    fetchImpl?: FetchLike,
  ) {
    // wrap rather than store bare fetch: browsers require the window receiver
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const text = await response.text();
    let data: unknown = null;
    if (text) {
      try {
        data = JSON.parse(text);
      } catch {
        data = text;
      }
    }
    if (!response.ok) {
      throw new ApiError(response.status, describeDetail(data));
    }
    return data as T;
  }

  createSession(config: SessionConfig): Promise<CreateResponse> {
    return this.request<CreateResponse>("POST", "/sessions", config);
  }

  query(sessionId: string): Promise<OfferQuery> {
    return this.request<OfferQuery>("GET", `/sessions/${sessionId}/query`);
  }

  answer(sessionId: string, response: string): Promise<SessionReport> {
    return this.request<SessionReport>(
      "POST",
      `/sessions/${sessionId}/answer`,
      { response },
    );
  }

  preference(
    sessionId: string,
    judgment: JudgmentDocument,
  ): Promise<SessionReport> {
    return this.request<SessionReport>(
      "POST",
      `/sessions/${sessionId}/preference`,
      judgment,
    );
  }

  report(sessionId: string): Promise<SessionReport> {
    return this.request<SessionReport>("GET", `/sessions/${sessionId}/report`);
  }
}

function describeDetail(data: unknown): string {
  if (typeof data === "string") {
    return data;
  }
  if (data && typeof data === "object" && "detail" in data) {
    const detail = (data as { detail: unknown }).detail;
    if (typeof detail === "string") {
      return detail;
    }
    return JSON.stringify(detail);
  }
  return JSON.stringify(data);
}
