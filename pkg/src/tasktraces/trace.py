"""Trace structure and the executable approval criteria."""
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone

from .categories import is_known_category
from .steps import StepInstance, canonicalize, is_known_kind, step_schema

APPROVED = "approved"
REJECTED = "rejected"

# Closed set of validation rule ids.
MIN_STEPS = "MIN_STEPS"
BAD_STEP_ARGS = "BAD_STEP_ARGS"
UNKNOWN_KIND = "UNKNOWN_KIND"
UNKNOWN_CATEGORY = "UNKNOWN_CATEGORY"
EMPTY_ARG = "EMPTY_ARG"
RELEVANCE_FLAG = "RELEVANCE_FLAG"

RULE_IDS = frozenset(
    {MIN_STEPS, BAD_STEP_ARGS, UNKNOWN_KIND, UNKNOWN_CATEGORY, EMPTY_ARG, RELEVANCE_FLAG}
)

# Relevance is advisory: a reviewer flag never rejects on its own.
_ADVISORY_RULES = frozenset({RELEVANCE_FLAG})


@dataclass(frozen=True)
class Trace:
    """An ordered sequence of steps collected under one task category."""

    id: str
    category: str
    worker_id: str
    created_at: datetime
    steps: tuple[StepInstance, ...]
    feedback: str | None = None

    def kinds(self) -> tuple[str, ...]:
        return tuple(s.kind for s in self.steps)


@dataclass(frozen=True)
class ValidationReport:
    verdict: str  # APPROVED or REJECTED
    violations: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    @property
    def approved(self) -> bool:
        return self.verdict == APPROVED

    def rule_ids(self) -> frozenset[str]:
        return frozenset(rule for rule, _ in self.violations)


def utc_now() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


def validate_trace(trace: Trace, relevance_note: str | None = None) -> ValidationReport:
    """Apply the approval criteria to a trace.

    All problems are reported, never thrown.  ``relevance_note``, when given,
    attaches an advisory RELEVANCE_FLAG violation (set by a reviewer or
    heuristic); it alone never causes rejection.
    """
    violations: list[tuple[str, str]] = []

    if not is_known_category(trace.category):
        violations.append((UNKNOWN_CATEGORY, f"unknown category {trace.category!r}"))

    if len(trace.steps) < 2:
        violations.append(
            (MIN_STEPS, f"trace has {len(trace.steps)} step(s); at least 2 required")
        )

    for i, step in enumerate(trace.steps):
        if not is_known_kind(step.kind):
            violations.append((UNKNOWN_KIND, f"steps[{i}]: unknown kind {step.kind!r}"))
            continue
        slots = step_schema(step.kind)
        if tuple(step.args.keys()) != slots:
            violations.append(
                (
                    BAD_STEP_ARGS,
                    f"steps[{i}]: {step.kind} expects args {list(slots)}, "
                    f"got {list(step.args.keys())}",
                )
            )
            continue
        for slot, value in step.args.items():
            if not canonicalize(value):
                violations.append((EMPTY_ARG, f"steps[{i}].args.{slot}: empty value"))

    if relevance_note is not None:
        violations.append((RELEVANCE_FLAG, relevance_note))

    rejecting = [v for v in violations if v[0] not in _ADVISORY_RULES]
    verdict = REJECTED if rejecting else APPROVED
    return ValidationReport(verdict=verdict, violations=tuple(violations))
