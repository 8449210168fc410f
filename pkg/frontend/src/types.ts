export interface StepDoc {
  kind: string;
  args: Record<string, string>;
  description?: string;
}

export interface TraceDoc {
  id: string;
  category: string;
  worker_id: string;
  created_at: string;
  steps: StepDoc[];
  feedback?: string;
}

export interface CategoryInfo {
  slug: string;
  prompt_text: string;
  layout_hints: [string, string][];
}

export interface ToolboxEntry {
  kind: string;
  slots: string[];
  description: string;
}

export interface SuggestionJson {
  kind: "next_step" | "missing_step" | "foreach_loop" | "branch_point";
  payload: {
    step?: StepDoc;
    position?: number;
    start?: number;
    period?: number;
    repetitions?: number;
    state?: { kind: string | null; args: string[] | null };
    alternatives?: {
      state: { kind: string | null; args: string[] | null };
      probability: number;
    }[];
  };
  score: number;
  provenance: string;
}

export interface SuggestResponse {
  category: string;
  model_version: number;
  suggestions: SuggestionJson[];
}
