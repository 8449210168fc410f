/** Thin client for the collection service. Consumes exactly the
 * documented endpoints; no other network access.
 */
import { serializeTrace } from "./serialize";
import type {
  CategoryInfo,
  SuggestResponse,
  ToolboxEntry,
  TraceDoc,
} from "./types";

export type FetchLike = typeof fetch;

export class ApiError extends Error {
  readonly status: number;
  readonly body: unknown;

  constructor(status: number, body: unknown) {
    super(`service returned ${status}`);
    this.status = status;
    this.body = body;
  }
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;
  sessionId: string | null = null;

  constructor(base = "", fetchFn: FetchLike = fetch) {
    this.base = base.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private async json<T>(resp: Response): Promise<T> {
    const body = await resp.json();
    if (!resp.ok) throw new ApiError(resp.status, body);
    return body as T;
  }

  async categories(): Promise<CategoryInfo[]> {
    return this.json(await this.fetchFn(`${this.base}/categories`));
  }

  async steps(slug: string): Promise<ToolboxEntry[]> {
    return this.json(await this.fetchFn(`${this.base}/categories/${slug}/steps`));
  }

  async acknowledge(): Promise<string> {
    const resp = await this.fetchFn(`${this.base}/sessions/acknowledge`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: "{}",
    });
    const body = await this.json<{ session_id: string }>(resp);
    this.sessionId = body.session_id;
    return body.session_id;
  }

  async submitTrace(doc: TraceDoc): Promise<{ id: string; status: string }> {
    if (!this.sessionId) throw new Error("session has not acknowledged");
    const resp = await this.fetchFn(`${this.base}/traces`, {
      method: "POST",
      headers: {
        "Content-Type": "application/json",
        "X-Session-Id": this.sessionId,
      },
      body: serializeTrace(doc),
    });
    return this.json(resp);
  }

  async suggest(
    slug: string,
    hint: TraceDoc["steps"],
    signal?: AbortSignal,
  ): Promise<SuggestResponse> {
    const resp = await this.fetchFn(`${this.base}/categories/${slug}/suggest`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ hint }),
      signal,
    });
    return this.json(resp);
  }
}
