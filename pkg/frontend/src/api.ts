/**
 * Typed client for the qcnlearn elicitation service.
 *
 * The frontend never computes constraint semantics itself: every fact it
 * shows comes from these payloads.  All functions reject with ApiError on
 * non-2xx responses so callers can branch on the HTTP status.
 */

export type SessionState = "awaiting_answer" | "reasking" | "converged" | "collapsed";

export interface PrunedEdge {
  i: number;
  j: number;
  removed: string[];
}

export interface QueryPayload {
  query_id: number;
  kind: string;
  i: number;
  j: number;
  b: number;
  symbol: string | null;
  text: string;
  is_reask: boolean;
  prior_answer: boolean | null;
  pruned: PrunedEdge[];
}

export interface StatusPayload {
  session_id: string;
  state: SessionState;
  query: QueryPayload | null;
  queries_asked: number;
  backtracks: number;
  network?: NetworkPayload;
}

export interface EdgePayload {
  i: number;
  j: number;
  candidates: string[];
  confirmed: string[];
  universal_checked: boolean;
}

export interface NetworkPayload {
  state: SessionState;
  n: number;
  names: string[];
  edges: EdgePayload[];
  stats: { queries: number; backtracks: number; detected_mistakes: number };
}

export interface CreateSessionRequest {
  calculus?: string;
  n?: number;
  names?: string[];
  case?: number;
  propagation?: string;
  heuristic?: string;
  seed?: number;
}

export class ApiError extends Error {
  constructor(readonly status: number, readonly detail: string) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(url, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      if (typeof body?.detail === "string") detail = body.detail;
    } catch {
      // non-JSON error body: keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

export class ElicitationClient {
  constructor(readonly baseUrl: string) {}

  createSession(body: CreateSessionRequest): Promise<StatusPayload> {
    return request(`${this.baseUrl}/sessions`, {
      method: "POST",
      body: JSON.stringify(body),
    });
  }

  getSession(sessionId: string): Promise<StatusPayload> {
    return request(`${this.baseUrl}/sessions/${sessionId}`);
  }

  answer(sessionId: string, queryId: number, yes: boolean): Promise<StatusPayload> {
    return request(`${this.baseUrl}/sessions/${sessionId}/answer`, {
      method: "POST",
      body: JSON.stringify({ query_id: queryId, yes }),
    });
  }

  getNetwork(sessionId: string): Promise<NetworkPayload> {
    return request(`${this.baseUrl}/sessions/${sessionId}/network`);
  }

  deleteSession(sessionId: string): Promise<{ deleted: string }> {
    return request(`${this.baseUrl}/sessions/${sessionId}`, { method: "DELETE" });
  }
}
