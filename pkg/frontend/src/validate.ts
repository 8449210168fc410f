/** Client-side trace validation mirroring the backend approval rules.
 *
 * The UI never submits a trace this validator rejects; the backend
 * applies the same rules, so a submission the client allows is approved
 * (rule parity is exercised by the shared fixture suite).
 */
import type { TraceDoc } from "./types";
import { STEP_SCHEMAS, canonicalize, isKnownCategory, isKnownKind } from "./vocab";

export const MIN_STEPS = "MIN_STEPS";
export const BAD_STEP_ARGS = "BAD_STEP_ARGS";
export const UNKNOWN_KIND = "UNKNOWN_KIND";
export const UNKNOWN_CATEGORY = "UNKNOWN_CATEGORY";
export const EMPTY_ARG = "EMPTY_ARG";

export interface Violation {
  rule: string;
  message: string;
}

export interface ValidationReport {
  verdict: "approved" | "rejected";
  violations: Violation[];
}

export function validateTrace(doc: TraceDoc): ValidationReport {
  const violations: Violation[] = [];

  if (!isKnownCategory(doc.category)) {
    violations.push({
      rule: UNKNOWN_CATEGORY,
      message: `unknown category '${doc.category}'`,
    });
  }

  if (doc.steps.length < 2) {
    violations.push({
      rule: MIN_STEPS,
      message: `trace has ${doc.steps.length} step(s); at least 2 required`,
    });
  }

  doc.steps.forEach((step, i) => {
    if (!isKnownKind(step.kind)) {
      violations.push({
        rule: UNKNOWN_KIND,
        message: `steps[${i}]: unknown kind '${step.kind}'`,
      });
      return;
    }
    const slots = STEP_SCHEMAS[step.kind];
    const got = Object.keys(step.args);
    if (got.length !== slots.length || slots.some((s, j) => got[j] !== s)) {
      violations.push({
        rule: BAD_STEP_ARGS,
        message: `steps[${i}]: ${step.kind} expects args [${slots}], got [${got}]`,
      });
      return;
    }
    for (const slot of slots) {
      if (!canonicalize(step.args[slot])) {
        violations.push({
          rule: EMPTY_ARG,
          message: `steps[${i}].args.${slot}: empty value`,
        });
      }
    }
  });

  return {
    verdict: violations.length ? "rejected" : "approved",
    violations,
  };
}
