"""Suggestion payloads and the shared ranking order."""
from __future__ import annotations

from dataclasses import dataclass

from .steps import KIND_ORDER, StepInstance

NEXT_STEP = "next_step"
MISSING_STEP = "missing_step"
FOREACH_LOOP = "foreach_loop"
BRANCH_POINT = "branch_point"

_SUGGESTION_KIND_ORDER = {NEXT_STEP: 0, MISSING_STEP: 1, FOREACH_LOOP: 2, BRANCH_POINT: 3}


@dataclass(frozen=True)
class MissingStep:
    position: int  # insertion index in hint coordinates
    step: StepInstance


@dataclass(frozen=True)
class LoopRegion:
    start: int
    period: int
    repetitions: int

    @property
    def length(self) -> int:
        return self.period * self.repetitions

    @property
    def end(self) -> int:
        return self.start + self.length


@dataclass(frozen=True)
class BranchPoint:
    state: "object"  # StateKey; kept loose to avoid an import cycle
    alternatives: tuple[tuple[object, float], ...]  # (StateKey, probability), prob desc


@dataclass(frozen=True)
class Suggestion:
    kind: str  # NEXT_STEP | MISSING_STEP | FOREACH_LOOP | BRANCH_POINT
    payload: object
    score: float
    provenance: str


def _step_sort_key(step: StepInstance) -> tuple:
    return (KIND_ORDER.get(step.kind, len(KIND_ORDER)), step.canonical_args())


def suggestion_sort_key(s: Suggestion) -> tuple:
    """Descending score, then toolbox kind order, then canonical args."""
    payload = s.payload
    if isinstance(payload, StepInstance):
        tail: tuple = _step_sort_key(payload)
    elif isinstance(payload, MissingStep):
        tail = (*_step_sort_key(payload.step), payload.position)
    elif isinstance(payload, LoopRegion):
        tail = (payload.start, payload.period)
    elif isinstance(payload, BranchPoint):
        tail = (repr(payload.state),)
    else:
        tail = (repr(payload),)
    return (-s.score, _SUGGESTION_KIND_ORDER.get(s.kind, 9), tail)


def sort_suggestions(suggestions: list[Suggestion]) -> list[Suggestion]:
    return sorted(suggestions, key=suggestion_sort_key)
