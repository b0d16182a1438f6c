/** Wire types mirroring the formtime HTTP API payloads. */

export interface GeometryBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface DocumentElement {
  id: string;
  kind: string;
  label: string;
  focus_index: number;
  options: string[];
  geometry: GeometryBox | null;
}

export interface FormDocumentPayload {
  source: string;
  title: string;
  elements: DocumentElement[];
}

export interface TaskAction {
  type: "type" | "select" | "toggle" | "press";
  value?: string;
  index?: number;
}

export interface TaskStepPayload {
  element_id: string;
  action: TaskAction;
}

export interface TaskPayload {
  steps: TaskStepPayload[];
  response_times?: number[];
}

export interface OperatorPayload {
  code: string;
  seconds: number;
  duration_us: number;
  detail: string;
  rationale: string;
}

export interface TraceEntryPayload {
  step: number;
  element_id: string;
  phase: string;
  phase_seconds: number;
  phase_us: number;
  operators: OperatorPayload[];
}

export interface ExplanationRecord {
  position: number;
  step: number;
  element_id: string;
  phase: string;
  code: string;
  detail: string;
  seconds: number;
  duration_us: number;
  rationale: string;
}

export interface ModelResponse {
  total_seconds: number;
  total_us: number;
  per_element_seconds: Record<string, number>;
  entries: TraceEntryPayload[];
  explanation: ExplanationRecord[];
  settings: unknown;
}

export interface ParseResponse {
  document: FormDocumentPayload;
  diagnostics: string[];
}

export interface CompareResponse {
  winner: string;
  results: { label: string; total_seconds: number; total_us: number }[];
  deltas: { a: string; b: string; delta_seconds: number; delta_us: number }[];
}

export interface ApiError {
  code: string;
  message: string;
  violations: { step: number; code: string; message: string }[];
}

export type TypingSkill = "expert" | "skilled" | "average" | "nontypist";
export type StrategyKind = "mouse-keyboard" | "keyboard" | "mouse";
export type MentalRule = "per-element" | "per-chunk" | "none";

export interface WhatIfSettings {
  typingSkill: TypingSkill;
  motorMultiplier: number;
  cognitiveMultiplier: number;
  strategy: StrategyKind;
  mentalRule: MentalRule;
  fittsEnabled: boolean;
  fittsA: number;
  fittsB: number;
  explanationEnabled: boolean;
}
