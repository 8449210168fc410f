import random

import pytest

from tasktraces import build_markov, diff_complete, make_step, suggest_edits
from tasktraces.suggestions import MISSING_STEP, NEXT_STEP, MissingStep

from conftest import random_trace


class TestDiffComplete:
    def test_self_diff_is_empty(self, f1):
        for trace in f1:
            assert diff_complete(list(trace.steps), f1) == []

    def test_dropped_first_step_comes_back(self, f1):
        hint = list(f1[0].steps[1:])
        suggestions = diff_complete(hint, f1)
        assert len(suggestions) == 1
        s = suggestions[0]
        assert s.kind == MISSING_STEP
        assert s.payload == MissingStep(position=0, step=f1[0].steps[0])
        assert s.score == pytest.approx(1 / 2)

    def test_dropped_middle_step_comes_back(self, f1):
        hint = [f1[0].steps[0], f1[0].steps[2]]
        suggestions = diff_complete(hint, f1)
        assert len(suggestions) == 1
        assert suggestions[0].payload == MissingStep(position=1, step=f1[0].steps[1])

    def test_empty_hint_returns_best_trace(self, f1):
        suggestions = diff_complete([], f1)
        # cost ties across F1 resolve by trace id: t1 wins
        assert [s.payload.step for s in suggestions] == list(f1[0].steps)
        assert all(s.payload.position == 0 for s in suggestions)
        assert all(s.provenance == "diff:t1" for s in suggestions)

    def test_self_diff_generated_traces(self):
        rng = random.Random(99)
        for i in range(200):
            trace = random_trace(rng, f"g{i}")
            assert diff_complete(list(trace.steps), [trace]) == []

    def test_requires_traces(self):
        with pytest.raises(ValueError):
            diff_complete([], [])


class TestSuggestEdits:
    def test_training_trace_hint_is_quiet(self, f1):
        model = build_markov(f1)
        suggestions = suggest_edits(model, f1, list(f1[0].steps))
        assert [s.kind for s in suggestions if s.kind in (NEXT_STEP, MISSING_STEP)] == []

    def test_empty_hint_composition(self, f1):
        model = build_markov(f1)
        suggestions = suggest_edits(model, f1, [])
        kinds_in_order = [
            (s.kind, getattr(s.payload, "kind", None) or s.payload.step.kind)
            for s in suggestions
        ]
        assert kinds_in_order == [
            (NEXT_STEP, "move_to"),
            (NEXT_STEP, "find"),
            (MISSING_STEP, "grab"),
            (MISSING_STEP, "deliver"),
        ]
        assert suggestions[0].score == pytest.approx(2 / 3)
        assert suggestions[1].score == pytest.approx(1 / 3)
        assert suggestions[2].score == pytest.approx(1 / 4)

    def test_dedup_keeps_max_score(self, f1):
        model = build_markov(f1)
        suggestions = suggest_edits(model, f1, [])
        move_to = [
            s
            for s in suggestions
            if (getattr(s.payload, "kind", None) or s.payload.step.kind) == "move_to"
        ]
        # proposed by both suggest_next (2/3) and diff_complete (1/4): kept once
        assert len(move_to) == 1
        assert move_to[0].kind == NEXT_STEP
        assert move_to[0].score == pytest.approx(2 / 3)

    def test_loop_in_hint_is_flagged(self, f1):
        model = build_markov(f1)
        hint = [
            make_step("grab", "apples"),
            make_step("place", "apples", "pantry"),
            make_step("grab", "milk"),
            make_step("place", "milk", "fridge"),
        ]
        suggestions = suggest_edits(model, f1, hint)
        loops = [s for s in suggestions if s.kind == "foreach_loop"]
        assert len(loops) == 1
        assert loops[0].payload.period == 2

    def test_category_mismatch_rejected(self, f1):
        model = build_markov(f1)
        other = f1[0].__class__(
            id="x",
            category="greeting",
            worker_id="w",
            created_at=f1[0].created_at,
            steps=f1[0].steps,
        )
        with pytest.raises(ValueError):
            suggest_edits(model, [other], [])

    def test_deterministic(self, f1):
        model = build_markov(f1)
        hint = [make_step("move_to", "front door")]
        assert suggest_edits(model, f1, hint) == suggest_edits(model, f1, hint)
