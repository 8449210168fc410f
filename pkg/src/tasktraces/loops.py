"""Tandem-repeat detection over step kinds; repeats become foreach suggestions."""
from __future__ import annotations

from .steps import StepInstance
from .suggestions import FOREACH_LOOP, LoopRegion, Suggestion, sort_suggestions


def _tandem_candidates(kinds: list[str], min_reps: int) -> list[LoopRegion]:
    """All maximal tandem repeats: block of period p repeated r >= min_reps times.

    Maximality: the run extends neither left nor right by another full block.
    """
    n = len(kinds)
    candidates: list[LoopRegion] = []
    for period in range(1, n // min_reps + 1):
        for start in range(0, n - period * min_reps + 1):
            block = kinds[start : start + period]
            # left-maximality: no identical block immediately before
            if start >= period and kinds[start - period : start] == block:
                continue
            reps = 1
            while (
                start + (reps + 1) * period <= n
                and kinds[start + reps * period : start + (reps + 1) * period] == block
            ):
                reps += 1
            if reps >= min_reps:
                candidates.append(LoopRegion(start=start, period=period, repetitions=reps))
    return candidates


def detect_loops(steps: list[StepInstance], min_reps: int = 2) -> list[LoopRegion]:
    """Non-overlapping maximal tandem repeats at the kind level.

    Arguments are ignored so "grab A, place A, grab B, place B" counts as a
    repeat.  Overlaps resolve by larger covered length, then smaller start,
    then smaller period.
    """
    if min_reps < 2:
        raise ValueError("min_reps must be >= 2")
    kinds = [s.kind for s in steps]
    candidates = _tandem_candidates(kinds, min_reps)
    candidates.sort(key=lambda r: (-r.length, r.start, r.period))
    chosen: list[LoopRegion] = []
    for region in candidates:
        if all(region.end <= c.start or region.start >= c.end for c in chosen):
            chosen.append(region)
    chosen.sort(key=lambda r: r.start)
    return chosen


def suggest_foreach(
    steps: list[StepInstance], min_reps: int = 2
) -> list[Suggestion]:
    """Wrap each detected repeat region as a foreach-loop suggestion."""
    if not steps:
        return []
    suggestions = [
        Suggestion(
            kind=FOREACH_LOOP,
            payload=region,
            score=region.length / len(steps),
            provenance="loops",
        )
        for region in detect_loops(steps, min_reps=min_reps)
    ]
    return sort_suggestions(suggestions)
