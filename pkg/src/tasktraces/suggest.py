"""Combined edit suggestions for a partial task hint."""
from __future__ import annotations

from dataclasses import dataclass, field

from .alignment import AlignCosts, diff_complete
from .loops import suggest_foreach
from .markov import MarkovModel, detect_branches, suggest_next
from .steps import StepInstance
from .suggestions import BranchPoint, MissingStep, Suggestion, sort_suggestions
from .trace import Trace


@dataclass(frozen=True)
class SuggestConfig:
    k: int = 3
    costs: AlignCosts = field(default_factory=AlignCosts)
    branch_threshold: float = 0.2
    min_loop_reps: int = 2


DEFAULT_CONFIG = SuggestConfig()


def _dedup_key(s: Suggestion) -> tuple:
    payload = s.payload
    if isinstance(payload, StepInstance):
        return ("step", payload.kind, payload.canonical_args())
    if isinstance(payload, MissingStep):
        return ("step", payload.step.kind, payload.step.canonical_args())
    if isinstance(payload, BranchPoint):
        return ("branch", repr(payload.state))
    return ("loop", payload.start, payload.period, payload.repetitions)


def suggest_edits(
    model: MarkovModel,
    traces: list[Trace],
    hint: list[StepInstance],
    config: SuggestConfig = DEFAULT_CONFIG,
) -> list[Suggestion]:
    """Union of next-step, missing-step, loop, and branch suggestions.

    A step proposed through more than one route keeps its highest score.
    Branch points are limited to states actually present in the hint.
    """
    if traces and {t.category for t in traces} != {model.category}:
        raise ValueError("model and traces must share the hint's category")

    pooled: list[Suggestion] = []
    pooled.extend(suggest_next(model, hint, k=config.k).suggestions)
    if traces:
        pooled.extend(diff_complete(hint, traces, costs=config.costs))
    pooled.extend(suggest_foreach(hint, min_reps=config.min_loop_reps))

    hint_states = {model.state_of(s) for s in hint}
    for branch in detect_branches(model, threshold=config.branch_threshold):
        if branch.payload.state in hint_states:
            pooled.append(branch)

    best: dict[tuple, Suggestion] = {}
    for s in sort_suggestions(pooled):  # score-descending, deterministic
        best.setdefault(_dedup_key(s), s)
    return sort_suggestions(list(best.values()))
