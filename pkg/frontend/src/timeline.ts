/** Editable timeline state: an ordered list of step drafts plus the
 * instructions-acknowledged gate. Submission stays disabled until the
 * gate is passed and the draft would survive validation.
 */
import type { StepDoc, TraceDoc } from "./types";
import { validateTrace } from "./validate";
import { STEP_SCHEMAS, type StepKind } from "./vocab";

export interface StepDraft {
  kind: StepKind;
  args: Record<string, string>;
  description: string;
}

export function newDraft(kind: StepKind): StepDraft {
  const args: Record<string, string> = {};
  for (const slot of STEP_SCHEMAS[kind]) args[slot] = "";
  return { kind, args, description: "" };
}

export class TimelineState {
  readonly category: string;
  steps: StepDraft[] = [];
  acknowledged = false;

  private listeners: (() => void)[] = [];

  constructor(category: string) {
    this.category = category;
  }

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const fn of this.listeners) fn();
  }

  acknowledge(): void {
    this.acknowledged = true;
    this.notify();
  }

  addStep(kind: StepKind, index?: number): StepDraft {
    const draft = newDraft(kind);
    const at = index ?? this.steps.length;
    this.steps.splice(at, 0, draft);
    this.notify();
    return draft;
  }

  setArg(index: number, slot: string, value: string): void {
    const draft = this.steps[index];
    if (!(slot in draft.args)) return;
    draft.args[slot] = value;
    this.notify();
  }

  setDescription(index: number, value: string): void {
    this.steps[index].description = value;
    this.notify();
  }

  move(from: number, to: number): void {
    if (from === to || from < 0 || from >= this.steps.length) return;
    const [draft] = this.steps.splice(from, 1);
    this.steps.splice(Math.max(0, Math.min(to, this.steps.length)), 0, draft);
    this.notify();
  }

  remove(index: number): void {
    this.steps.splice(index, 1);
    this.notify();
  }

  /** Steps as they would appear in the submitted document. */
  stepDocs(): StepDoc[] {
    return this.steps.map((draft) => {
      const doc: StepDoc = { kind: draft.kind, args: { ...draft.args } };
      if (draft.description.trim()) doc.description = draft.description;
      return doc;
    });
  }

  toTraceDoc(id: string, workerId: string, createdAt: string): TraceDoc {
    return {
      id,
      category: this.category,
      worker_id: workerId,
      created_at: createdAt,
      steps: this.stepDocs(),
    };
  }

  /** True when the gate is passed and local validation would approve. */
  canSubmit(): boolean {
    if (!this.acknowledged) return false;
    const probe = this.toTraceDoc("draft", "draft", "2022-01-01T00:00:00Z");
    return validateTrace(probe).verdict === "approved";
  }
}
