import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api";
import { AssistController, DEBOUNCE_MS } from "../src/assist";
import type { StepDoc, SuggestResponse } from "../src/types";

function response(version: number): SuggestResponse {
  return { category: "mail", model_version: version, suggestions: [] };
}

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

describe("AssistController", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  function setup(fetchImpl: typeof fetch) {
    const received: SuggestResponse[] = [];
    const notices: string[] = [];
    const api = new ApiClient("", fetchImpl);
    const controller = new AssistController(api, "mail", {
      onSuggestions: (r) => received.push(r),
      onModelNotReady: () => notices.push("not-ready"),
      onError: () => notices.push("error"),
    });
    return { controller, received, notices };
  }

  it("debounces bursts of timeline changes into one request", async () => {
    const fetchSpy = vi.fn(async () => jsonResponse(response(1)));
    const { controller, received } = setup(fetchSpy as unknown as typeof fetch);

    const hint: StepDoc[] = [];
    controller.timelineChanged(hint);
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS - 50);
    controller.timelineChanged(hint);
    controller.timelineChanged(hint);
    expect(fetchSpy).not.toHaveBeenCalled();

    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS + 10);
    expect(fetchSpy).toHaveBeenCalledTimes(1);
    expect(received).toEqual([response(1)]);
  });

  it("sends the current hint in the request body", async () => {
    const fetchSpy = vi.fn(async () => jsonResponse(response(1)));
    const { controller } = setup(fetchSpy as unknown as typeof fetch);

    controller.timelineChanged([{ kind: "grab", args: { item: "mail" } }]);
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS + 10);

    const [url, init] = fetchSpy.mock.calls[0] as unknown as [string, RequestInit];
    expect(url).toBe("/categories/mail/suggest");
    expect(JSON.parse(init.body as string)).toEqual({
      hint: [{ kind: "grab", args: { item: "mail" } }],
    });
  });

  it("newest request wins: the older in-flight request is aborted", async () => {
    let calls = 0;
    const fetchSpy = vi.fn(async (_url: string, init?: RequestInit) => {
      calls += 1;
      const version = calls;
      if (version === 1) {
        // Slow first response that should be cancelled.
        return new Promise<Response>((resolve, reject) => {
          init?.signal?.addEventListener("abort", () =>
            reject(new DOMException("aborted", "AbortError")),
          );
          setTimeout(() => resolve(jsonResponse(response(1))), 5000);
        });
      }
      return jsonResponse(response(version));
    });
    const { controller, received, notices } = setup(
      fetchSpy as unknown as typeof fetch,
    );

    controller.timelineChanged([]);
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS + 10);
    expect(fetchSpy).toHaveBeenCalledTimes(1);

    controller.timelineChanged([{ kind: "wait", args: {} }]);
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS + 10);
    await vi.runAllTimersAsync();

    expect(fetchSpy).toHaveBeenCalledTimes(2);
    expect(received).toEqual([response(2)]);
    expect(notices).toEqual([]); // the aborted request reports nothing
  });

  it("maps 404 to the model-not-ready notice", async () => {
    const fetchSpy = vi.fn(async () => jsonResponse({ error: "model not ready" }, 404));
    const { controller, notices, received } = setup(
      fetchSpy as unknown as typeof fetch,
    );

    controller.timelineChanged([]);
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS + 10);
    expect(notices).toEqual(["not-ready"]);
    expect(received).toEqual([]);
  });

  it("reports other failures through onError", async () => {
    const fetchSpy = vi.fn(async () => {
      throw new TypeError("network down");
    });
    const { controller, notices } = setup(fetchSpy as unknown as typeof fetch);

    controller.timelineChanged([]);
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS + 10);
    expect(notices).toEqual(["error"]);
  });
});
