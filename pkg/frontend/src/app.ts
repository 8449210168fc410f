/** DOM layer: the collection view (prompt, layout pane, toolbox,
 * timeline) plus the instructions gate and the assist panel.
 */
import type { ApiClient } from "./api";
import { AssistController } from "./assist";
import { TimelineState } from "./timeline";
import type {
  CategoryInfo,
  SuggestResponse,
  SuggestionJson,
  ToolboxEntry,
} from "./types";
import { validateTrace } from "./validate";
import { isKnownKind, type StepKind } from "./vocab";

const INSTRUCTIONS = [
  "You will teach a home robot how to perform an everyday task, one step at a time.",
  "Read the task prompt on the left. The picture pane names the regions of the home; hover a region for details.",
  "Drag steps from the Toolbox onto the timeline, or click a step to append it. Fill in every parameter box with your own words.",
  "Use the optional note field under a step to add detail or justify it.",
  "Your trace needs at least two steps, and every parameter must be filled in before you can submit.",
  "Scroll to the bottom of these instructions and press “I understand” to begin.",
];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class App {
  private readonly api: ApiClient;
  private readonly root: HTMLElement;
  private readonly category: CategoryInfo;
  private readonly toolbox: ToolboxEntry[];
  private readonly workerId: string;
  readonly timeline: TimelineState;
  private assist: AssistController | null = null;
  private suggestions: SuggestResponse | null = null;
  private assistNotice: string | null = null;
  private submitted = 0;

  constructor(
    root: HTMLElement,
    api: ApiClient,
    category: CategoryInfo,
    toolbox: ToolboxEntry[],
    workerId: string,
  ) {
    this.root = root;
    this.api = api;
    this.category = category;
    this.toolbox = toolbox;
    this.workerId = workerId;
    this.timeline = new TimelineState(category.slug);
    this.timeline.onChange(() => {
      this.assist?.timelineChanged(this.timeline.stepDocs());
      this.render();
    });
  }

  enableAssist(): void {
    this.assist = new AssistController(this.api, this.category.slug, {
      onSuggestions: (response) => {
        this.suggestions = response;
        this.assistNotice = null;
        this.render();
      },
      onModelNotReady: () => {
        this.suggestions = null;
        this.assistNotice =
          "No model for this task yet — suggestions appear once enough traces are collected.";
        this.render();
      },
      onError: () => {
        this.assistNotice = "Suggestion service unreachable; will retry on the next edit.";
        this.render();
      },
    });
    this.assist.timelineChanged(this.timeline.stepDocs());
  }

  render(): void {
    this.root.replaceChildren();
    if (!this.timeline.acknowledged) {
      this.root.appendChild(this.renderGate());
      return;
    }
    const page = el("div", "collection-view");
    page.appendChild(this.renderPrompt());
    page.appendChild(this.renderLayout());
    page.appendChild(this.renderToolbox());
    page.appendChild(this.renderTimeline());
    if (this.assist) page.appendChild(this.renderAssistPanel());
    page.appendChild(this.renderSubmitBar());
    this.root.appendChild(page);
  }

  // -- instructions gate ---------------------------------------------------

  private renderGate(): HTMLElement {
    const gate = el("section", "gate");
    gate.appendChild(el("h2", undefined, "Before you start"));
    const scroller = el("div", "gate-scroll");
    for (const line of INSTRUCTIONS) scroller.appendChild(el("p", undefined, line));
    gate.appendChild(scroller);

    const button = el("button", "gate-ack", "I understand");
    button.disabled = true;
    // The control unlocks only after the instructions have been scrolled
    // to the bottom (or fit without scrolling).
    const maybeUnlock = () => {
      const remaining =
        scroller.scrollHeight - scroller.scrollTop - scroller.clientHeight;
      if (remaining <= 1) button.disabled = false;
    };
    scroller.addEventListener("scroll", maybeUnlock);
    maybeUnlock();

    button.addEventListener("click", () => {
      void this.api.acknowledge().then(() => this.timeline.acknowledge());
    });
    gate.appendChild(button);
    return gate;
  }

  // -- left column: prompt and layout pane ---------------------------------

  private renderPrompt(): HTMLElement {
    const pane = el("section", "prompt-pane");
    pane.appendChild(el("h2", undefined, "Your task"));
    pane.appendChild(el("p", "prompt-text", this.category.prompt_text));
    return pane;
  }

  private renderLayout(): HTMLElement {
    const pane = el("section", "layout-pane");
    pane.appendChild(el("h2", undefined, "The home"));
    for (const [region, hint] of this.category.layout_hints) {
      const node = el("div", "layout-region", region);
      node.title = hint;
      pane.appendChild(node);
    }
    return pane;
  }

  // -- toolbox --------------------------------------------------------------

  private renderToolbox(): HTMLElement {
    const pane = el("section", "toolbox");
    pane.appendChild(el("h2", undefined, "Toolbox"));
    for (const entry of this.toolbox) {
      const block = el("button", "toolbox-step", entry.kind);
      block.title = entry.description;
      block.draggable = true;
      block.addEventListener("click", () => {
        if (isKnownKind(entry.kind)) this.timeline.addStep(entry.kind);
      });
      block.addEventListener("dragstart", (event) => {
        event.dataTransfer?.setData("text/step-kind", entry.kind);
      });
      pane.appendChild(block);
    }
    return pane;
  }

  /** Handle a drop onto the timeline; non-step payloads are no-ops. */
  handleDrop(event: DragEvent, index?: number): void {
    const kind = event.dataTransfer?.getData("text/step-kind") ?? "";
    if (!isKnownKind(kind)) return;
    event.preventDefault();
    this.timeline.addStep(kind as StepKind, index);
  }

  // -- timeline -------------------------------------------------------------

  private renderTimeline(): HTMLElement {
    const pane = el("section", "timeline");
    pane.appendChild(el("h2", undefined, "Timeline"));
    pane.addEventListener("dragover", (event) => event.preventDefault());
    pane.addEventListener("drop", (event) => this.handleDrop(event));

    this.timeline.steps.forEach((draft, i) => {
      const row = el("div", "timeline-step");
      row.appendChild(el("span", "step-number", String(i + 1)));
      row.appendChild(el("span", "step-kind", draft.kind));

      for (const slot of Object.keys(draft.args)) {
        const input = el("input", "step-arg");
        input.placeholder = slot;
        input.value = draft.args[slot];
        input.addEventListener("input", () =>
          this.timeline.setArg(i, slot, input.value),
        );
        row.appendChild(input);
      }

      const note = el("textarea", "step-description");
      note.placeholder = "optional: add detail or justify this step";
      note.value = draft.description;
      note.addEventListener("input", () =>
        this.timeline.setDescription(i, note.value),
      );
      row.appendChild(note);

      const up = el("button", "step-up", "↑");
      up.addEventListener("click", () => this.timeline.move(i, i - 1));
      const down = el("button", "step-down", "↓");
      down.addEventListener("click", () => this.timeline.move(i, i + 1));
      const del = el("button", "step-delete", "×");
      del.addEventListener("click", () => this.timeline.remove(i));
      row.append(up, down, del);
      pane.appendChild(row);
    });

    if (this.timeline.steps.length === 0) {
      pane.appendChild(
        el("p", "timeline-empty", "Drag steps here, or click them in the Toolbox."),
      );
    }
    return pane;
  }

  // -- assist panel ----------------------------------------------------------

  private renderAssistPanel(): HTMLElement {
    const pane = el("section", "assist-panel");
    pane.appendChild(el("h2", undefined, "Suggestions"));
    if (this.assistNotice) {
      pane.appendChild(el("p", "assist-notice", this.assistNotice));
      return pane;
    }
    if (!this.suggestions) return pane;
    for (const s of this.suggestions.suggestions) {
      pane.appendChild(this.renderSuggestion(s));
    }
    return pane;
  }

  private renderSuggestion(s: SuggestionJson): HTMLElement {
    switch (s.kind) {
      case "next_step": {
        const step = s.payload.step!;
        const chip = el("button", "suggestion-chip chip-next", step.kind);
        chip.title = `add ${step.kind} (score ${s.score.toFixed(2)})`;
        chip.addEventListener("click", () => {
          if (!isKnownKind(step.kind)) return;
          const draft = this.timeline.addStep(step.kind as StepKind);
          for (const [slot, value] of Object.entries(step.args)) {
            if (slot in draft.args) draft.args[slot] = value;
          }
          this.timeline.setDescription(this.timeline.steps.length - 1, "");
        });
        return chip;
      }
      case "missing_step": {
        const step = s.payload.step!;
        return el(
          "div",
          "suggestion-marker chip-missing",
          `insert ${step.kind} at step ${s.payload.position! + 1}`,
        );
      }
      case "foreach_loop":
        return el(
          "div",
          "suggestion-badge chip-foreach",
          `for-each? steps ${s.payload.start! + 1}–${
            s.payload.start! + s.payload.period! * s.payload.repetitions!
          } repeat`,
        );
      case "branch_point": {
        const alts = (s.payload.alternatives ?? [])
          .map((a) => `${a.state.kind} (${a.probability.toFixed(2)})`)
          .join(", ");
        return el(
          "div",
          "suggestion-badge chip-branch",
          `after ${s.payload.state?.kind ?? "start"}, people differ: ${alts}`,
        );
      }
    }
  }

  // -- submission ------------------------------------------------------------

  private renderSubmitBar(): HTMLElement {
    const bar = el("section", "submit-bar");
    const button = el("button", "submit", "Submit trace");
    button.disabled = !this.timeline.canSubmit();
    button.addEventListener("click", () => void this.submit());
    bar.appendChild(button);

    const probe = this.timeline.toTraceDoc("draft", "draft", "2022-01-01T00:00:00Z");
    const report = validateTrace(probe);
    if (report.verdict === "rejected" && this.timeline.steps.length > 0) {
      bar.appendChild(
        el("p", "submit-why", report.violations.map((v) => v.message).join("; ")),
      );
    }
    return bar;
  }

  async submit(): Promise<{ id: string; status: string } | null> {
    if (!this.timeline.canSubmit()) return null;
    const id = `${this.workerId}-${this.category.slug}-${this.submitted + 1}`;
    const createdAt = new Date().toISOString().replace(/\.\d{3}Z$/, "Z");
    const doc = this.timeline.toTraceDoc(id, this.workerId, createdAt);
    const result = await this.api.submitTrace(doc);
    this.submitted += 1;
    return result;
  }
}

export async function bootstrap(
  root: HTMLElement,
  api: ApiClient,
  slug: string,
  workerId: string,
  assist = true,
): Promise<App> {
  const [categories, toolbox] = await Promise.all([
    api.categories(),
    api.steps(slug),
  ]);
  const category = categories.find((c) => c.slug === slug);
  if (!category) throw new Error(`unknown category ${slug}`);
  const app = new App(root, api, category, toolbox, workerId);
  if (assist) app.enableAssist();
  app.render();
  return app;
}
