/**
 * Form preview geometry: boxes are positioned from the exact coordinates the
 * engine models, so what you see is what Fitts' law measures.
 */
import type { FormDocumentPayload, TaskStepPayload } from "./types.js";

export interface PreviewBox {
  id: string;
  label: string;
  kind: string;
  left: number;
  top: number;
  width: number;
  height: number;
  selected: boolean;
  orderBadges: number[];
}

export function computePreview(
  document: FormDocumentPayload | null,
  steps: TaskStepPayload[],
  scale = 1.0,
): PreviewBox[] {
  if (!document) return [];
  const boxes: PreviewBox[] = [];
  for (const element of document.elements) {
    if (!element.geometry) continue;
    const badges = steps
      .map((step, index) => ({ step, index }))
      .filter(({ step }) => step.element_id === element.id)
      .map(({ index }) => index + 1);
    boxes.push({
      id: element.id,
      label: element.label || element.id,
      kind: element.kind,
      left: element.geometry.x * scale,
      top: element.geometry.y * scale,
      width: element.geometry.width * scale,
      height: element.geometry.height * scale,
      selected: badges.length > 0,
      orderBadges: badges,
    });
  }
  return boxes;
}

export function previewExtent(boxes: PreviewBox[]): { width: number; height: number } {
  let width = 0;
  let height = 0;
  for (const box of boxes) {
    width = Math.max(width, box.left + box.width);
    height = Math.max(height, box.top + box.height);
  }
  return { width: width + 20, height: height + 20 };
}
