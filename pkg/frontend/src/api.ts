/** Thin client for the formtime HTTP API; the only source of modeled numbers. */
import type {
  CompareResponse,
  FormDocumentPayload,
  ModelResponse,
  ParseResponse,
  TaskPayload,
  WhatIfSettings,
} from "./types.js";

export interface ModelRequestBody {
  document: FormDocumentPayload;
  task: TaskPayload;
  profile: {
    typing_skill: string;
    motor_multiplier: number;
    cognitive_multiplier: number;
  };
  strategy: string;
  mental_rule: string;
  fitts: { a: number; b: number } | null;
}

export function buildModelRequest(
  document: FormDocumentPayload,
  task: TaskPayload,
  settings: WhatIfSettings,
): ModelRequestBody {
  return {
    document,
    task,
    profile: {
      typing_skill: settings.typingSkill,
      motor_multiplier: settings.motorMultiplier,
      cognitive_multiplier: settings.cognitiveMultiplier,
    },
    strategy: settings.strategy,
    mental_rule: settings.mentalRule,
    fitts: settings.fittsEnabled ? { a: settings.fittsA, b: settings.fittsB } : null,
  };
}

async function post<T>(baseUrl: string, path: string, body: unknown): Promise<T> {
  const response = await fetch(baseUrl + path, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  const payload = await response.json();
  if (!response.ok) {
    const message = payload && payload.message ? payload.message : response.statusText;
    throw new Error(`${path} failed: ${message}`);
  }
  return payload as T;
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  parse(html: string): Promise<ParseResponse> {
    return post(this.baseUrl, "/api/parse", { html });
  }

  model(
    document: FormDocumentPayload,
    task: TaskPayload,
    settings: WhatIfSettings,
  ): Promise<ModelResponse> {
    return post(this.baseUrl, "/api/model", buildModelRequest(document, task, settings));
  }

  compare(
    designs: { label: string; document: FormDocumentPayload }[],
    task: TaskPayload,
    settings: WhatIfSettings,
  ): Promise<CompareResponse> {
    const body = buildModelRequest(designs[0].document, task, settings);
    return post(this.baseUrl, "/api/compare", {
      designs,
      task,
      settings: {
        profile: body.profile,
        strategy: body.strategy,
        mental_rule: body.mental_rule,
        fitts: body.fitts,
      },
    });
  }
}
