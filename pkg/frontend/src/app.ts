/**
 * DOM wiring. All state transitions live in state.ts; all numbers come from
 * the HTTP API. One model request per state revision; stale responses are
 * dropped by applyResult, so the displayed total always matches the settings.
 */
import { ApiClient } from "./api.js";
import { formatDelta, formatSeconds } from "./format.js";
import { computePreview, previewExtent } from "./preview.js";
import {
  SessionState,
  applyResult,
  displayedTotal,
  editStep,
  initialState,
  loadDocument,
  taskPayload,
  toggleElement,
  undo,
  updateSettings,
} from "./state.js";
import { buildTooltip, tooltipText } from "./tooltip.js";
import type { TaskStepPayload, WhatIfSettings } from "./types.js";

const api = new ApiClient("");
let state: SessionState = initialState();
let inFlightRevision = -1;
let previousTotal: number | null = null;

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function setState(next: SessionState): void {
  state = next;
  render();
  void requestModel();
}

async function requestModel(): Promise<void> {
  if (!state.document || state.revision === state.resultRevision) return;
  if (inFlightRevision === state.revision) return; // one request per revision
  const revision = state.revision;
  inFlightRevision = revision;
  try {
    const result = await api.model(state.document, taskPayload(state), state.settings);
    state = applyResult(state, revision, result);
  } catch (error) {
    console.error(error);
  } finally {
    if (inFlightRevision === revision) inFlightRevision = -1;
  }
  render();
  void requestModel(); // settings may have moved on while we were in flight
}

// --- rendering --------------------------------------------------------------

function render(): void {
  renderPreview();
  renderSteps();
  renderTotal();
  renderTrace();
}

function renderPreview(): void {
  const canvas = byId<HTMLDivElement>("preview");
  canvas.textContent = "";
  const boxes = computePreview(state.document, state.steps);
  if (!boxes.length) {
    const empty = document.createElement("p");
    empty.className = "empty";
    empty.textContent = state.document
      ? "no form elements found"
      : "paste form HTML and press Load";
    canvas.appendChild(empty);
    return;
  }
  const extent = previewExtent(boxes);
  canvas.style.width = `${extent.width}px`;
  canvas.style.height = `${extent.height}px`;
  for (const box of boxes) {
    const node = document.createElement("div");
    node.className = `box kind-${box.kind}` + (box.selected ? " selected" : "");
    node.style.left = `${box.left}px`;
    node.style.top = `${box.top}px`;
    node.style.width = `${box.width}px`;
    node.style.height = `${box.height}px`;
    node.title = box.label;
    node.tabIndex = 0;
    const label = document.createElement("span");
    label.className = "box-label";
    label.textContent = box.label;
    node.appendChild(label);
    if (box.orderBadges.length) {
      const badge = document.createElement("span");
      badge.className = "badge";
      badge.textContent = box.orderBadges.join(",");
      node.appendChild(badge);
    }
    node.addEventListener("click", () => setState(toggleElement(state, box.id)));
    node.addEventListener("mouseenter", (event) => showTooltip(box.id, event));
    node.addEventListener("focus", (event) => showTooltip(box.id, event));
    node.addEventListener("mouseleave", hideTooltip);
    node.addEventListener("blur", hideTooltip);
    canvas.appendChild(node);
  }
}

function stepEditor(step: TaskStepPayload, index: number): HTMLElement {
  const item = document.createElement("li");
  const label = document.createElement("span");
  label.textContent = `${index + 1}. ${step.element_id} (${step.action.type})`;
  item.appendChild(label);
  if (step.action.type === "type") {
    const input = document.createElement("input");
    input.value = step.action.value ?? "";
    input.placeholder = "text to type";
    input.addEventListener("change", () =>
      setState(
        editStep(state, index, {
          element_id: step.element_id,
          action: { type: "type", value: input.value },
        }),
      ),
    );
    item.appendChild(input);
  }
  if (step.action.type === "select") {
    const element = state.document?.elements.find((e) => e.id === step.element_id);
    const picker = document.createElement("select");
    (element?.options ?? []).forEach((option, optionIndex) => {
      const node = document.createElement("option");
      node.value = String(optionIndex);
      node.textContent = `${optionIndex}: ${option}`;
      node.selected = optionIndex === (step.action.index ?? 0);
      picker.appendChild(node);
    });
    picker.addEventListener("change", () =>
      setState(
        editStep(state, index, {
          element_id: step.element_id,
          action: { type: "select", index: Number(picker.value) },
        }),
      ),
    );
    item.appendChild(picker);
  }
  return item;
}

function renderSteps(): void {
  const list = byId<HTMLOListElement>("steps");
  list.textContent = "";
  state.steps.forEach((step, index) => list.appendChild(stepEditor(step, index)));
}

function renderTotal(): void {
  const node = byId<HTMLDivElement>("total");
  const delta = byId<HTMLSpanElement>("delta");
  const total = displayedTotal(state);
  if (total === null) {
    node.textContent = state.document ? "…" : "-";
    return;
  }
  node.textContent = `${formatSeconds(total)}s`;
  node.classList.remove("flash");
  void node.offsetWidth; // restart the animation
  node.classList.add("flash");
  if (previousTotal !== null && previousTotal !== total) {
    delta.textContent = formatDelta(total - previousTotal);
  }
  previousTotal = total;
}

function renderTrace(): void {
  const table = byId<HTMLTableSectionElement>("trace-body");
  table.textContent = "";
  if (!state.result || state.resultRevision !== state.revision) return;
  for (const entry of state.result.entries) {
    for (const op of entry.operators) {
      const row = document.createElement("tr");
      for (const cell of [
        String(entry.step + 1),
        entry.element_id,
        entry.phase,
        op.code,
        formatSeconds(op.seconds),
        op.rationale,
      ]) {
        const td = document.createElement("td");
        td.textContent = cell;
        row.appendChild(td);
      }
      table.appendChild(row);
    }
  }
}

// --- tooltips ----------------------------------------------------------------

function showTooltip(elementId: string, event: Event): void {
  const node = byId<HTMLDivElement>("tooltip");
  const tooltip = buildTooltip(
    elementId,
    state.resultRevision === state.revision ? state.result : null,
    state.settings.explanationEnabled,
  );
  const text = tooltipText(tooltip);
  if (!text) {
    node.hidden = true;
    return;
  }
  node.textContent = text;
  node.hidden = false;
  const target = event.target as HTMLElement;
  const rect = target.getBoundingClientRect();
  node.style.left = `${rect.right + 8 + window.scrollX}px`;
  node.style.top = `${rect.top + window.scrollY}px`;
}

function hideTooltip(): void {
  byId<HTMLDivElement>("tooltip").hidden = true;
}

// --- controls ----------------------------------------------------------------

function bindControls(): void {
  byId<HTMLButtonElement>("load").addEventListener("click", async () => {
    const html = byId<HTMLTextAreaElement>("html-input").value;
    try {
      const parsed = await api.parse(html);
      byId<HTMLDivElement>("diagnostics").textContent = parsed.diagnostics.join("; ");
      previousTotal = null;
      setState(loadDocument(state, parsed.document));
    } catch (error) {
      byId<HTMLDivElement>("diagnostics").textContent = String(error);
    }
  });

  byId<HTMLButtonElement>("undo").addEventListener("click", () => setState(undo(state)));

  const change = (changes: Partial<WhatIfSettings>) => setState(updateSettings(state, changes));
  byId<HTMLSelectElement>("skill").addEventListener("change", (event) =>
    change({ typingSkill: (event.target as HTMLSelectElement).value as WhatIfSettings["typingSkill"] }),
  );
  byId<HTMLSelectElement>("strategy").addEventListener("change", (event) =>
    change({ strategy: (event.target as HTMLSelectElement).value as WhatIfSettings["strategy"] }),
  );
  byId<HTMLSelectElement>("mental").addEventListener("change", (event) =>
    change({ mentalRule: (event.target as HTMLSelectElement).value as WhatIfSettings["mentalRule"] }),
  );
  byId<HTMLInputElement>("motor").addEventListener("change", (event) =>
    change({ motorMultiplier: Number((event.target as HTMLInputElement).value) }),
  );
  byId<HTMLInputElement>("cognitive").addEventListener("change", (event) =>
    change({ cognitiveMultiplier: Number((event.target as HTMLInputElement).value) }),
  );
  byId<HTMLInputElement>("fitts").addEventListener("change", (event) =>
    change({ fittsEnabled: (event.target as HTMLInputElement).checked }),
  );
  byId<HTMLInputElement>("fitts-a").addEventListener("change", (event) =>
    change({ fittsA: Number((event.target as HTMLInputElement).value) }),
  );
  byId<HTMLInputElement>("fitts-b").addEventListener("change", (event) =>
    change({ fittsB: Number((event.target as HTMLInputElement).value) }),
  );
  byId<HTMLInputElement>("explain").addEventListener("change", (event) =>
    change({ explanationEnabled: (event.target as HTMLInputElement).checked }),
  );

  byId<HTMLButtonElement>("compare-run").addEventListener("click", runComparison);
}

async function runComparison(): Promise<void> {
  const output = byId<HTMLDivElement>("compare-result");
  const htmlA = byId<HTMLTextAreaElement>("compare-a").value;
  const htmlB = byId<HTMLTextAreaElement>("compare-b").value;
  if (!htmlA.trim() || !htmlB.trim() || !state.steps.length) {
    output.textContent = "load two designs and select steps first";
    return;
  }
  try {
    const [a, b] = await Promise.all([api.parse(htmlA), api.parse(htmlB)]);
    const report = await api.compare(
      [
        { label: "A", document: a.document },
        { label: "B", document: b.document },
      ],
      taskPayload(state),
      state.settings,
    );
    const ranked = [...report.results].sort((x, y) => x.total_us - y.total_us);
    output.textContent =
      ranked.map((r) => `${r.label}: ${formatSeconds(r.total_seconds)}s`).join("  |  ") +
      `  winner: ${report.winner}`;
  } catch (error) {
    output.textContent = String(error);
  }
}

bindControls();
render();
