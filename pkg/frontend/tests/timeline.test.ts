import { describe, expect, it } from "vitest";

import { TimelineState } from "../src/timeline";

function filled(): TimelineState {
  const timeline = new TimelineState("mail");
  timeline.addStep("grab");
  timeline.setArg(0, "item", "mail");
  timeline.addStep("deliver");
  timeline.setArg(1, "item", "mail");
  timeline.setArg(1, "target", "kitchen table");
  return timeline;
}

describe("editing", () => {
  it("adding a step creates empty slots in schema order", () => {
    const timeline = new TimelineState("mail");
    timeline.addStep("deliver");
    expect(Object.keys(timeline.steps[0].args)).toEqual(["item", "target"]);
    expect(timeline.steps[0].args.item).toBe("");
  });

  it("parameterize and describe update the draft in place", () => {
    const timeline = new TimelineState("greeting");
    timeline.addStep("approach");
    timeline.setArg(0, "person", "Guest 1");
    timeline.setDescription(0, "greet them at the door");
    expect(timeline.steps[0].args.person).toBe("Guest 1");
    expect(timeline.stepDocs()[0]).toEqual({
      kind: "approach",
      args: { person: "Guest 1" },
      description: "greet them at the door",
    });
  });

  it("setting an unknown slot is a no-op", () => {
    const timeline = new TimelineState("mail");
    timeline.addStep("wait");
    timeline.setArg(0, "target", "door");
    expect(timeline.steps[0].args).toEqual({});
  });

  it("reorder moves a draft without changing it", () => {
    const timeline = filled();
    const deliver = timeline.steps[1];
    timeline.move(1, 0);
    expect(timeline.steps[0]).toBe(deliver);
    expect(timeline.steps.map((s) => s.kind)).toEqual(["deliver", "grab"]);
  });

  it("delete removes the draft", () => {
    const timeline = filled();
    timeline.remove(0);
    expect(timeline.steps.map((s) => s.kind)).toEqual(["deliver"]);
  });

  it("notifies listeners on every edit", () => {
    const timeline = new TimelineState("mail");
    let calls = 0;
    timeline.onChange(() => (calls += 1));
    timeline.addStep("grab");
    timeline.setArg(0, "item", "mail");
    timeline.remove(0);
    expect(calls).toBe(3);
  });
});

describe("submission gating", () => {
  it("disabled until acknowledged", () => {
    const timeline = filled();
    expect(timeline.canSubmit()).toBe(false);
    timeline.acknowledge();
    expect(timeline.canSubmit()).toBe(true);
  });

  it("deleting down to one step disables submit", () => {
    const timeline = filled();
    timeline.acknowledge();
    timeline.remove(1);
    expect(timeline.canSubmit()).toBe(false);
  });

  it("an empty required argument disables submit", () => {
    const timeline = filled();
    timeline.acknowledge();
    timeline.setArg(1, "target", "   ");
    expect(timeline.canSubmit()).toBe(false);
    timeline.setArg(1, "target", "office");
    expect(timeline.canSubmit()).toBe(true);
  });

  it("empty descriptions are omitted from the submitted document", () => {
    const timeline = filled();
    const doc = timeline.toTraceDoc("t1", "w1", "2022-01-01T00:00:00Z");
    expect(doc.steps[0]).toEqual({ kind: "grab", args: { item: "mail" } });
  });
});
