/** Canonical trace serialization, byte-identical to the backend's form.
 *
 * Keys emit in a fixed order (id, category, worker_id, created_at,
 * steps, feedback), step args in schema slot order, optional fields
 * omitted when absent, and no whitespace between tokens.
 */
import type { StepDoc, TraceDoc } from "./types";
import { STEP_SCHEMAS, isKnownKind } from "./vocab";

function canonicalStep(step: StepDoc): StepDoc {
  const args: Record<string, string> = {};
  const slots = isKnownKind(step.kind)
    ? STEP_SCHEMAS[step.kind]
    : Object.keys(step.args);
  for (const slot of slots) {
    if (slot in step.args) args[slot] = step.args[slot];
  }
  const out: StepDoc = { kind: step.kind, args };
  if (step.description !== undefined) out.description = step.description;
  return out;
}

export function traceToCanonicalDoc(doc: TraceDoc): TraceDoc {
  const out: TraceDoc = {
    id: doc.id,
    category: doc.category,
    worker_id: doc.worker_id,
    created_at: doc.created_at,
    steps: doc.steps.map(canonicalStep),
  };
  if (doc.feedback !== undefined) out.feedback = doc.feedback;
  return out;
}

export function serializeTrace(doc: TraceDoc): string {
  return JSON.stringify(traceToCanonicalDoc(doc));
}
