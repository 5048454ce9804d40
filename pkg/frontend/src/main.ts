/**
 * Browser entry point: wires the pure view model and renderer to the DOM
 * and the HTTP client.  Kept as thin as possible — all logic that can be
 * unit-tested lives in state.ts and render.ts.
 */

import { ElicitationClient } from "./api.js";
import { renderApp } from "./render.js";
import {
  applyError,
  applyNetwork,
  applyStatus,
  beginSubmit,
  initialModel,
  SOCCER_PRESET,
  type SessionViewModel,
} from "./state.js";

const client = new ElicitationClient("");
let model: SessionViewModel = initialModel();

function redraw(): void {
  const root = document.getElementById("app");
  if (!root) return;
  root.innerHTML = renderApp(model);
  document.getElementById("btn-yes")?.addEventListener("click", () => submit(true));
  document.getElementById("btn-no")?.addEventListener("click", () => submit(false));
}

function update(next: SessionViewModel): void {
  model = next;
  redraw();
}

async function start(calculus: string, names: string[]): Promise<void> {
  try {
    const status = await client.createSession({ calculus, names });
    let next = applyStatus({ ...initialModel(calculus), names }, status);
    next = applyNetwork(next, await client.getNetwork(status.session_id));
    update(next);
  } catch (err) {
    update(applyError(model, String(err)));
  }
}

async function submit(yes: boolean): Promise<void> {
  const pending = beginSubmit(model);
  if (pending === null || pending.query === null || pending.sessionId === null) return;
  update(pending);
  try {
    const status = await client.answer(pending.sessionId, pending.query.query_id, yes);
    let next = applyStatus(model, status);
    if (!status.network && status.session_id) {
      next = applyNetwork(next, await client.getNetwork(status.session_id));
    }
    update(next);
  } catch (err) {
    update(applyError(model, String(err)));
  }
}

function readNames(): string[] | null {
  const field = document.getElementById("names") as HTMLInputElement | null;
  if (!field) return null;
  const names = field.value.split(",").map((s) => s.trim()).filter((s) => s.length > 0);
  return names.length >= 2 ? names : null;
}

document.getElementById("btn-start")?.addEventListener("click", () => {
  const select = document.getElementById("calculus") as HTMLSelectElement | null;
  const names = readNames();
  if (names === null) {
    update(applyError(model, "Enter at least two comma-separated names."));
    return;
  }
  void start(select?.value ?? "point", names);
});

document.getElementById("btn-demo")?.addEventListener("click", () => {
  const field = document.getElementById("names") as HTMLInputElement | null;
  const select = document.getElementById("calculus") as HTMLSelectElement | null;
  if (field) field.value = SOCCER_PRESET.names.join(", ");
  if (select) select.value = SOCCER_PRESET.calculus;
  void start(SOCCER_PRESET.calculus, [...SOCCER_PRESET.names]);
});

redraw();
