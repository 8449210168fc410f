"""Minimum-cost alignment between step sequences; insertions become missing steps."""
from __future__ import annotations

from dataclasses import dataclass

from .steps import StepInstance
from .suggestions import MISSING_STEP, MissingStep, Suggestion, sort_suggestions
from .trace import Trace

MATCH = "match"
SUBSTITUTE = "substitute"
DELETE = "delete"
INSERT = "insert"


@dataclass(frozen=True)
class AlignCosts:
    """Per-operation costs.  Substitution across kinds must not be cheaper
    than a same-kind argument change, and match must not exceed substitute."""

    match: float = 0.0
    substitute_same_kind: float = 0.5
    substitute: float = 1.0
    insert: float = 1.0
    delete: float = 1.0

    def __post_init__(self):
        if min(self.match, self.substitute_same_kind, self.substitute, self.insert, self.delete) < 0:
            raise ValueError("costs must be non-negative")
        if self.match > self.substitute_same_kind or self.substitute_same_kind > self.substitute:
            raise ValueError("expected match <= same-kind substitute <= cross-kind substitute")

    def pair_cost(self, a: StepInstance, b: StepInstance) -> tuple[str, float]:
        """(op, cost) for aligning step a against step b."""
        if a.kind != b.kind:
            return SUBSTITUTE, self.substitute
        if a.canonical_args() == b.canonical_args():
            return MATCH, self.match
        return SUBSTITUTE, self.substitute_same_kind


DEFAULT_COSTS = AlignCosts()


@dataclass(frozen=True)
class AlignOp:
    op: str  # MATCH | SUBSTITUTE | DELETE | INSERT
    source_index: int | None  # i for match/substitute/delete
    target_index: int | None  # j for match/substitute/insert


@dataclass(frozen=True)
class Alignment:
    ops: tuple[AlignOp, ...]
    cost: float


def align(
    source: list[StepInstance],
    target: list[StepInstance],
    costs: AlignCosts = DEFAULT_COSTS,
) -> Alignment:
    """Minimum-cost edit script turning source into target.

    Ties break deterministically: match > substitute > delete > insert.
    """
    n, m = len(source), len(target)
    # dp[i][j]: min cost aligning source[:i] with target[:j]; choice records
    # the preferred op into each cell.
    dp = [[0.0] * (m + 1) for _ in range(n + 1)]
    choice: list[list[str | None]] = [[None] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        dp[i][0] = dp[i - 1][0] + costs.delete
        choice[i][0] = DELETE
    for j in range(1, m + 1):
        dp[0][j] = dp[0][j - 1] + costs.insert
        choice[0][j] = INSERT
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            pair_op, pair = costs.pair_cost(source[i - 1], target[j - 1])
            candidates = (
                (dp[i - 1][j - 1] + pair, pair_op),
                (dp[i - 1][j] + costs.delete, DELETE),
                (dp[i][j - 1] + costs.insert, INSERT),
            )
            best_cost = min(c for c, _ in candidates)
            # preference order is the tuple order above (match/substitute first)
            best_op = next(op for c, op in candidates if c == best_cost)
            dp[i][j] = best_cost
            choice[i][j] = best_op

    ops: list[AlignOp] = []
    i, j = n, m
    while i > 0 or j > 0:
        op = choice[i][j]
        if op in (MATCH, SUBSTITUTE):
            ops.append(AlignOp(op, i - 1, j - 1))
            i, j = i - 1, j - 1
        elif op == DELETE:
            ops.append(AlignOp(DELETE, i - 1, None))
            i -= 1
        else:
            ops.append(AlignOp(INSERT, None, j - 1))
            j -= 1
    ops.reverse()
    return Alignment(ops=tuple(ops), cost=dp[n][m])


def replay(source: list[StepInstance], target: list[StepInstance], alignment: Alignment) -> list[StepInstance]:
    """Apply an alignment's ops to source; the result must equal target."""
    out: list[StepInstance] = []
    for op in alignment.ops:
        if op.op in (MATCH, SUBSTITUTE, INSERT):
            out.append(target[op.target_index])
    return out


def diff_complete(
    hint: list[StepInstance],
    traces: list[Trace],
    costs: AlignCosts = DEFAULT_COSTS,
) -> list[Suggestion]:
    """Missing-step suggestions from the closest single trace.

    Aligns the hint against every trace, picks the cheapest (ties by trace
    id), and reports that alignment's insertions at hint coordinates.
    """
    if not traces:
        raise ValueError("traces must be non-empty")
    categories = {t.category for t in traces}
    if len(categories) != 1:
        raise ValueError(f"traces span multiple categories: {sorted(categories)}")

    best: tuple[float, str, Trace, Alignment] | None = None
    for trace in traces:
        alignment = align(hint, list(trace.steps), costs)
        key = (alignment.cost, trace.id)
        if best is None or key < (best[0], best[1]):
            best = (alignment.cost, trace.id, trace, alignment)
    cost, trace_id, trace, alignment = best

    score = 1.0 / (1.0 + cost)
    suggestions: list[Suggestion] = []
    hint_pos = 0
    for op in alignment.ops:
        if op.op == INSERT:
            suggestions.append(
                Suggestion(
                    kind=MISSING_STEP,
                    payload=MissingStep(position=hint_pos, step=trace.steps[op.target_index]),
                    score=score,
                    provenance=f"diff:{trace_id}",
                )
            )
        else:
            hint_pos += 1
    return sort_suggestions(suggestions)
