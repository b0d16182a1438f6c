/**
 * Explanation tooltips: the operator sequence for one element, verbatim from
 * the service's explanation records. Nothing is recomputed client-side.
 */
import { formatSeconds } from "./format.js";
import type { ExplanationRecord, ModelResponse } from "./types.js";

export interface TooltipSection {
  step: number;
  phase: string;
  phaseSeconds: string;
  lines: string[];
}

export type Tooltip =
  | { kind: "disabled" }
  | { kind: "pending" }
  | { kind: "not-in-task" }
  | { kind: "trace"; sections: TooltipSection[]; elementSeconds: string };

export function recordLine(record: ExplanationRecord): string {
  return `${record.code} ${formatSeconds(record.seconds)}s ${record.rationale}`;
}

export function buildTooltip(
  elementId: string,
  result: ModelResponse | null,
  enabled: boolean,
): Tooltip {
  if (!enabled) return { kind: "disabled" };
  if (!result) return { kind: "pending" };
  const records = result.explanation.filter((r) => r.element_id === elementId);
  if (records.length === 0) return { kind: "not-in-task" };

  const sections: TooltipSection[] = [];
  for (const entry of result.entries) {
    if (entry.element_id !== elementId) continue;
    sections.push({
      step: entry.step,
      phase: entry.phase,
      phaseSeconds: formatSeconds(entry.phase_seconds),
      lines: records
        .filter((r) => r.step === entry.step && r.phase === entry.phase)
        .map(recordLine),
    });
  }
  return {
    kind: "trace",
    sections,
    elementSeconds: formatSeconds(result.per_element_seconds[elementId] ?? 0),
  };
}

export function tooltipText(tooltip: Tooltip): string {
  switch (tooltip.kind) {
    case "disabled":
      return "";
    case "pending":
      return "modeling...";
    case "not-in-task":
      return "not in task";
    case "trace":
      return tooltip.sections
        .map(
          (section) =>
            `step ${section.step + 1} ${section.phase} (${section.phaseSeconds}s)\n` +
            section.lines.map((line) => `  ${line}`).join("\n"),
        )
        .join("\n")
        .concat(`\nelement total ${tooltip.elementSeconds}s`);
  }
}
