/** Live-suggestion controller for assist mode.
 *
 * Timeline changes are debounced (300 ms) so typing does not generate
 * per-keystroke traffic, and at most one request is in flight: a newer
 * change aborts the older request (newest wins).
 */
import type { ApiClient, ApiError } from "./api";
import type { StepDoc, SuggestResponse } from "./types";

export const DEBOUNCE_MS = 300;

export interface AssistCallbacks {
  onSuggestions(response: SuggestResponse): void;
  onModelNotReady(): void;
  onError(err: unknown): void;
}

export class AssistController {
  private readonly api: ApiClient;
  private readonly slug: string;
  private readonly callbacks: AssistCallbacks;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inFlight: AbortController | null = null;

  constructor(api: ApiClient, slug: string, callbacks: AssistCallbacks) {
    this.api = api;
    this.slug = slug;
    this.callbacks = callbacks;
  }

  /** Schedule a suggestion refresh for the given timeline contents. */
  timelineChanged(hint: StepDoc[]): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.request(hint);
    }, DEBOUNCE_MS);
  }

  private async request(hint: StepDoc[]): Promise<void> {
    this.inFlight?.abort();
    const controller = new AbortController();
    this.inFlight = controller;
    try {
      const response = await this.api.suggest(this.slug, hint, controller.signal);
      if (controller.signal.aborted) return;
      this.callbacks.onSuggestions(response);
    } catch (err) {
      if (controller.signal.aborted) return;
      if ((err as ApiError)?.status === 404) {
        this.callbacks.onModelNotReady();
      } else {
        this.callbacks.onError(err);
      }
    } finally {
      if (this.inFlight === controller) this.inFlight = null;
    }
  }

  dispose(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.inFlight?.abort();
  }
}
