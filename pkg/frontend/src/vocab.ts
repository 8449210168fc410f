/** The closed step vocabulary, mirrored from the collection backend.
 *
 * Order matters: it is the toolbox display order and the ranking
 * tie-break order used by the service. Rule-parity with the backend is
 * checked by the shared fixture suite under tests/fixtures/.
 */

export const STEP_KINDS = [
  "move_to",
  "find",
  "grab",
  "open",
  "close",
  "deliver",
  "receive",
  "place",
  "approach",
  "say",
  "tell",
  "ask",
  "activate",
  "deactivate",
  "vacuum",
  "wipe",
  "wait",
] as const;

export type StepKind = (typeof STEP_KINDS)[number];

export const STEP_SCHEMAS: Record<StepKind, readonly string[]> = {
  move_to: ["target"],
  find: ["target"],
  grab: ["item"],
  open: ["container"],
  close: ["container"],
  deliver: ["item", "target"],
  receive: ["item"],
  place: ["item", "container"],
  approach: ["person"],
  say: ["exact_speech"],
  tell: ["story"],
  ask: ["exact_speech"],
  activate: ["device"],
  deactivate: ["device"],
  vacuum: ["room"],
  wipe: ["surface"],
  wait: [],
};

export const STEP_DESCRIPTIONS: Record<StepKind, string> = {
  move_to: "move to a target",
  find: "search for a target",
  grab: "grab an item",
  open: "open a container",
  close: "close a container",
  deliver: "bring an item to a target",
  receive: "receive an item from someone",
  place: "place an item in a container",
  approach: "approach a person",
  say: "say the exact speech as specified",
  tell: "tell a story",
  ask: "ask a question using exact speech",
  activate: "turn a device on",
  deactivate: "turn a device off",
  vacuum: "clean a room by vacuuming it",
  wipe: "clean a surface by wiping it",
  wait: "wait for something to happen",
};

export const CATEGORY_SLUGS = [
  "mail",
  "greeting",
  "farewell",
  "groceries",
  "storytelling",
  "alarm",
  "announcement",
  "vacuum",
  "answer_door",
  "turn_on_lights",
  "delivery",
  "ask_about_day",
  "phone_call",
  "patrol",
  "find",
  "dust",
  "declutter",
  "answer_question",
] as const;

export function isKnownKind(kind: string): kind is StepKind {
  return (STEP_KINDS as readonly string[]).includes(kind);
}

export function isKnownCategory(slug: string): boolean {
  return (CATEGORY_SLUGS as readonly string[]).includes(slug);
}

/** Lowercase, trim, and collapse whitespace runs. Idempotent. */
export function canonicalize(text: string): string {
  return text.toLowerCase().split(/\s+/).filter(Boolean).join(" ");
}
