/**
 * Session state and its pure transitions.
 *
 * All modeling happens server-side; this module only tracks what the user has
 * loaded, selected, and configured, plus which model response revision the
 * displayed total belongs to. Any mutation that can change the prediction
 * bumps `revision`; a response is applied only if it was requested for the
 * current revision, so a stale total can never be displayed.
 */
import type {
  DocumentElement,
  FormDocumentPayload,
  ModelResponse,
  TaskPayload,
  TaskStepPayload,
  WhatIfSettings,
} from "./types.js";

export interface SessionState {
  document: FormDocumentPayload | null;
  steps: TaskStepPayload[];
  history: TaskStepPayload[][];
  settings: WhatIfSettings;
  revision: number;
  result: ModelResponse | null;
  resultRevision: number;
  compareA: { label: string; result: ModelResponse } | null;
  compareB: { label: string; result: ModelResponse } | null;
}

export function defaultSettings(): WhatIfSettings {
  return {
    typingSkill: "average",
    motorMultiplier: 1.0,
    cognitiveMultiplier: 1.0,
    strategy: "mouse-keyboard",
    mentalRule: "per-element",
    fittsEnabled: false,
    fittsA: 0.1,
    fittsB: 0.15,
    explanationEnabled: true,
  };
}

export function initialState(): SessionState {
  return {
    document: null,
    steps: [],
    history: [],
    settings: defaultSettings(),
    revision: 0,
    result: null,
    resultRevision: -1,
    compareA: null,
    compareB: null,
  };
}

export function defaultActionFor(element: DocumentElement): TaskStepPayload {
  switch (element.kind) {
    case "text":
    case "password":
    case "textarea":
      return { element_id: element.id, action: { type: "type", value: "" } };
    case "select":
    case "radio":
      return { element_id: element.id, action: { type: "select", index: 0 } };
    case "checkbox":
      return { element_id: element.id, action: { type: "toggle" } };
    default:
      return { element_id: element.id, action: { type: "press" } };
  }
}

function bumped(state: SessionState, changes: Partial<SessionState>): SessionState {
  return { ...state, ...changes, revision: state.revision + 1 };
}

export function loadDocument(state: SessionState, document: FormDocumentPayload): SessionState {
  return bumped(state, { document, steps: [], history: [], result: null, resultRevision: -1 });
}

/** Click on a preview element: append a step, or remove its steps if selected. */
export function toggleElement(state: SessionState, elementId: string): SessionState {
  if (!state.document) return state;
  const element = state.document.elements.find((e) => e.id === elementId);
  if (!element) return state;
  const history = [...state.history, state.steps];
  const existing = state.steps.some((s) => s.element_id === elementId);
  const steps = existing
    ? state.steps.filter((s) => s.element_id !== elementId)
    : [...state.steps, defaultActionFor(element)];
  return bumped(state, { steps, history });
}

export function editStep(state: SessionState, index: number, step: TaskStepPayload): SessionState {
  if (index < 0 || index >= state.steps.length) return state;
  const history = [...state.history, state.steps];
  const steps = state.steps.map((s, i) => (i === index ? step : s));
  return bumped(state, { steps, history });
}

export function undo(state: SessionState): SessionState {
  if (!state.history.length) return state;
  const history = state.history.slice(0, -1);
  const steps = state.history[state.history.length - 1];
  return bumped(state, { steps, history });
}

export function updateSettings(state: SessionState, changes: Partial<WhatIfSettings>): SessionState {
  return bumped(state, { settings: { ...state.settings, ...changes } });
}

/** Apply a model response; stale revisions are discarded unchanged. */
export function applyResult(
  state: SessionState,
  requestedRevision: number,
  result: ModelResponse,
): SessionState {
  if (requestedRevision !== state.revision) return state;
  return { ...state, result, resultRevision: requestedRevision };
}

/** The total to show, or null while the current revision is unmodeled. */
export function displayedTotal(state: SessionState): number | null {
  if (!state.result || state.resultRevision !== state.revision) return null;
  return state.result.total_seconds;
}

export function taskPayload(state: SessionState): TaskPayload {
  return { steps: state.steps };
}

export function stepOrder(state: SessionState): string[] {
  return state.steps.map((s) => s.element_id);
}
