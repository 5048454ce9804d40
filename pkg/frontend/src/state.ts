/**
 * Pure view-model layer: everything the page shows is derived here from
 * service payloads, with no DOM and no network access.  The model never
 * invents state — edges, counters, and the banner all echo the last
 * payload received — and answer submission is guarded by query_id so a
 * double click produces exactly one request.
 */

import type {
  EdgePayload,
  NetworkPayload,
  QueryPayload,
  SessionState,
  StatusPayload,
} from "./api.js";

// Plain-language glosses for the relation symbols; the raw symbol is kept
// alongside so the UI can show it on hover.
const PHRASES: Record<string, Record<string, string>> = {
  point: { "<": "occurs before", "=": "occurs at the same time as", ">": "occurs after" },
  ia: {
    P: "happens entirely before",
    Pi: "happens entirely after",
    E: "coincides exactly with",
    M: "ends exactly when the start of",
    Mi: "starts exactly when the end of",
    O: "overlaps",
    Oi: "overlaps the end of",
    D: "takes place entirely during",
    Di: "contains",
    S: "starts together with and ends before",
    Si: "starts together with and ends after",
    F: "finishes together with and starts after",
    Fi: "finishes together with and starts before",
  },
  rcc8: {
    DC: "is completely separate from",
    EC: "touches the boundary of",
    PO: "partially overlaps",
    TPP: "is inside and touches the edge of",
    NTPP: "is strictly inside",
    TPPi: "contains, touching the edge of",
    NTPPi: "strictly contains",
    EQ: "is exactly the same region as",
  },
};

export function phraseFor(calculus: string, symbol: string): string {
  return PHRASES[calculus]?.[symbol] ?? `relates by '${symbol}' to`;
}

export type Mode = "normal" | "rechecking" | "contradiction" | "done" | "collapsed";

export interface EdgeView {
  i: number;
  j: number;
  left: string;
  right: string;
  /** Remaining possibilities, as {symbol, phrase, confirmed} triples. */
  remaining: { symbol: string; phrase: string; confirmed: boolean }[];
  resolved: boolean;
  universalChecked: boolean;
}

export interface SessionViewModel {
  sessionId: string | null;
  calculus: string;
  names: string[];
  state: SessionState | "idle";
  query: QueryPayload | null;
  queriesAsked: number;
  backtracks: number;
  detectedMistakes: number;
  edges: EdgeView[];
  /** query_ids already sent, to make repeated clicks idempotent. */
  submittedQueryIds: number[];
  /** true while an answer request is in flight. */
  busy: boolean;
  error: string | null;
}

export function initialModel(calculus = "point"): SessionViewModel {
  return {
    sessionId: null,
    calculus,
    names: [],
    state: "idle",
    query: null,
    queriesAsked: 0,
    backtracks: 0,
    detectedMistakes: 0,
    edges: [],
    submittedQueryIds: [],
    busy: false,
    error: null,
  };
}

function edgeView(calculus: string, names: string[], e: EdgePayload): EdgeView {
  const confirmed = new Set(e.confirmed);
  return {
    i: e.i,
    j: e.j,
    left: names[e.i] ?? `entity ${e.i}`,
    right: names[e.j] ?? `entity ${e.j}`,
    remaining: e.candidates.map((symbol) => ({
      symbol,
      phrase: phraseFor(calculus, symbol),
      confirmed: confirmed.has(symbol),
    })),
    resolved: e.candidates.length <= 1,
    universalChecked: e.universal_checked,
  };
}

/** Fold a status payload (from create/get/answer) into the model. */
export function applyStatus(model: SessionViewModel, status: StatusPayload): SessionViewModel {
  const next: SessionViewModel = {
    ...model,
    sessionId: status.session_id,
    state: status.state,
    query: status.query,
    queriesAsked: status.queries_asked,
    backtracks: status.backtracks,
    busy: false,
    error: null,
  };
  if (status.network) {
    return applyNetwork(next, status.network);
  }
  return next;
}

/** Fold a network payload into the model, refreshing the edge grid. */
export function applyNetwork(model: SessionViewModel, net: NetworkPayload): SessionViewModel {
  return {
    ...model,
    names: net.names,
    edges: net.edges.map((e) => edgeView(model.calculus, net.names, e)),
    queriesAsked: net.stats.queries,
    backtracks: net.stats.backtracks,
    detectedMistakes: net.stats.detected_mistakes,
  };
}

export function applyError(model: SessionViewModel, message: string): SessionViewModel {
  return { ...model, busy: false, error: message };
}

/** Banner mode shown above the question card. */
export function modeOf(model: SessionViewModel): Mode {
  if (model.state === "collapsed") return "collapsed";
  if (model.state === "converged") return "done";
  if (model.state === "reasking") {
    // a reask that carries the answer originally given is a detected
    // contradiction; reasks without one are routine re-checks
    return model.query?.prior_answer != null ? "contradiction" : "rechecking";
  }
  return "normal";
}

export function bannerText(model: SessionViewModel): string {
  switch (modeOf(model)) {
    case "done":
      return "All constraints identified — session complete.";
    case "collapsed":
      return "The answers given contradict each other beyond repair.";
    case "contradiction":
      return "Earlier answers contradict each other. Please reconsider this question; your previous answer is shown below.";
    case "rechecking":
      return "Re-checking an earlier answer to be safe.";
    default:
      return "Answer the question below.";
  }
}

/** Whether the yes/no buttons should accept a click right now. */
export function canAnswer(model: SessionViewModel): boolean {
  return (
    !model.busy &&
    model.query !== null &&
    (model.state === "awaiting_answer" || model.state === "reasking") &&
    !model.submittedQueryIds.includes(model.query.query_id)
  );
}

/**
 * Mark the outstanding query as submitted.  Returns null when nothing may
 * be sent (no query, busy, or this query_id was already submitted), which
 * is what makes a double click a single request.
 */
export function beginSubmit(model: SessionViewModel): SessionViewModel | null {
  if (!canAnswer(model) || model.query === null) return null;
  return {
    ...model,
    busy: true,
    submittedQueryIds: [...model.submittedQueryIds, model.query.query_id],
  };
}

/** Demo preset: four commuters and a match to schedule around. */
export const SOCCER_PRESET = {
  calculus: "ia",
  names: ["John's ride", "Mary's ride", "Wendy's ride", "Soccer game"],
};
