/**
 * HTML rendering as pure string functions so the view is unit-testable
 * without a browser.  main.ts injects the result and wires events.
 */

import {
  bannerText,
  canAnswer,
  modeOf,
  type SessionViewModel,
} from "./state.js";

export function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderBanner(model: SessionViewModel): string {
  const mode = modeOf(model);
  return `<div class="banner banner-${mode}" data-mode="${mode}">${escapeHtml(bannerText(model))}</div>`;
}

export function renderQuestion(model: SessionViewModel): string {
  const q = model.query;
  if (model.state === "idle") {
    return `<p class="hint">Start a session to begin.</p>`;
  }
  if (q === null) {
    return `<p class="hint">No question outstanding.</p>`;
  }
  const enabled = canAnswer(model);
  const disabled = enabled ? "" : " disabled";
  const prior =
    q.prior_answer == null
      ? ""
      : `<p class="prior">You previously answered <strong>${q.prior_answer ? "yes" : "no"}</strong>.</p>`;
  const pruned =
    q.pruned.length === 0
      ? ""
      : `<p class="pruned">Ruled out by your last answer: ${q.pruned.length} possibilit${q.pruned.length === 1 ? "y" : "ies"} elsewhere.</p>`;
  return [
    `<p class="question" data-query-id="${q.query_id}">${escapeHtml(q.text)}</p>`,
    prior,
    pruned,
    `<button id="btn-yes"${disabled}>Yes</button>`,
    `<button id="btn-no"${disabled}>No</button>`,
  ].join("\n");
}

export function renderGrid(model: SessionViewModel): string {
  if (model.edges.length === 0) return "";
  const rows = model.edges
    .map((e) => {
      const cells = e.remaining
        .map(
          (r) =>
            `<span class="rel${r.confirmed ? " confirmed" : ""}" title="${escapeHtml(r.symbol)}">${escapeHtml(r.phrase)}</span>`,
        )
        .join(", ");
      const cls = e.resolved ? "edge resolved" : "edge";
      return `<tr class="${cls}"><td>${escapeHtml(e.left)}</td><td>${escapeHtml(e.right)}</td><td>${cells}</td></tr>`;
    })
    .join("\n");
  return [
    `<table class="grid"><thead><tr><th>First</th><th>Second</th><th>Remaining possibilities</th></tr></thead>`,
    `<tbody>${rows}</tbody></table>`,
  ].join("\n");
}

export function renderStats(model: SessionViewModel): string {
  return `<p class="stats">Questions asked: <span id="stat-queries">${model.queriesAsked}</span> · Corrections: <span id="stat-backtracks">${model.backtracks}</span></p>`;
}

export function renderApp(model: SessionViewModel): string {
  const error = model.error ? `<p class="error">${escapeHtml(model.error)}</p>` : "";
  return [
    renderBanner(model),
    error,
    `<section id="question-card">${renderQuestion(model)}</section>`,
    renderStats(model),
    `<section id="network">${renderGrid(model)}</section>`,
  ].join("\n");
}
