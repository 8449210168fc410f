"""First-order transition models over abstracted step states."""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field

from .steps import KIND_ORDER, StepInstance, step_schema
from .suggestions import (
    BRANCH_POINT,
    NEXT_STEP,
    BranchPoint,
    Suggestion,
    sort_suggestions,
)
from .trace import Trace

ABSTRACTION_KIND = "kind"
ABSTRACTION_KIND_ARGS = "kind+args"

_START_KIND = "<start>"
_END_KIND = "<end>"


@dataclass(frozen=True)
class StateKey:
    """A model state: a step kind, optionally refined by its canonical args."""

    kind: str
    arg_signature: tuple[str, ...] | None = None

    def is_sentinel(self) -> bool:
        return self.kind in (_START_KIND, _END_KIND)

    def __repr__(self):
        if self.arg_signature is None:
            return self.kind
        return f"{self.kind}({', '.join(self.arg_signature)})"


START = StateKey(_START_KIND)
END = StateKey(_END_KIND)


def state_sort_key(state: StateKey) -> tuple:
    """START first, END last, otherwise toolbox order then args."""
    if state == START:
        return (0, 0, ())
    if state == END:
        return (2, 0, ())
    return (1, KIND_ORDER.get(state.kind, len(KIND_ORDER)), state.arg_signature or ())


@dataclass(frozen=True)
class MarkovModel:
    """Transition counts over states, with additive smoothing at query time.

    Counts are the source of truth; probabilities are derived.  The successor
    alphabet for smoothing is every observed step state plus END.
    """

    category: str
    abstraction: str  # ABSTRACTION_KIND or ABSTRACTION_KIND_ARGS
    alpha: float
    trace_count: int
    states: frozenset[StateKey]  # observed step states, no sentinels
    counts: dict[StateKey, dict[StateKey, int]]  # outgoing adjacency
    arg_observations: dict[StateKey, Counter] = field(default_factory=dict)

    def state_of(self, step: StepInstance) -> StateKey:
        return step_state(step, self.abstraction)

    @property
    def successor_alphabet(self) -> frozenset[StateKey]:
        return self.states | {END}

    def transition_probs(self, state: StateKey) -> dict[StateKey, float]:
        """The probability row out of ``state``; empty for END or unknown states."""
        if state == END:
            return {}
        if state != START and state not in self.states:
            return {}
        out = self.counts.get(state, {})
        total = sum(out.values())
        alphabet = self.successor_alphabet
        if self.alpha > 0:
            denom = total + self.alpha * len(alphabet)
            return {t: (out.get(t, 0) + self.alpha) / denom for t in alphabet}
        if total == 0:
            return {}
        return {t: c / total for t, c in out.items()}

    def transition_prob(self, source: StateKey, target: StateKey) -> float:
        return self.transition_probs(source).get(target, 0.0)

    def modal_args(self, state: StateKey) -> dict[str, str]:
        """The most frequently observed canonical args for a state."""
        if state.arg_signature is not None:
            return dict(zip(step_schema(state.kind), state.arg_signature))
        observed = self.arg_observations.get(state)
        if not observed:
            return {}
        best = min(observed.items(), key=lambda kv: (-kv[1], kv[0]))[0]
        return dict(zip(step_schema(state.kind), best))


def step_state(step: StepInstance, abstraction: str) -> StateKey:
    if abstraction == ABSTRACTION_KIND:
        return StateKey(step.kind)
    if abstraction == ABSTRACTION_KIND_ARGS:
        return StateKey(step.kind, step.canonical_args())
    raise ValueError(f"unknown abstraction {abstraction!r}")


def build_markov(
    traces: list[Trace],
    abstraction: str = ABSTRACTION_KIND,
    alpha: float = 0.0,
) -> MarkovModel:
    """Count consecutive state pairs (with START/END) across same-category traces."""
    if not traces:
        raise ValueError("cannot build a model from zero traces")
    categories = {t.category for t in traces}
    if len(categories) != 1:
        raise ValueError(f"traces span multiple categories: {sorted(categories)}")
    if alpha < 0:
        raise ValueError("alpha must be >= 0")

    counts: dict[StateKey, dict[StateKey, int]] = {}
    states: set[StateKey] = set()
    arg_observations: dict[StateKey, Counter] = {}

    def bump(source: StateKey, target: StateKey) -> None:
        row = counts.setdefault(source, {})
        row[target] = row.get(target, 0) + 1

    for trace in traces:
        path = [step_state(s, abstraction) for s in trace.steps]
        for step, state in zip(trace.steps, path):
            states.add(state)
            arg_observations.setdefault(state, Counter())[step.canonical_args()] += 1
        previous = START
        for state in path:
            bump(previous, state)
            previous = state
        bump(previous, END)

    return MarkovModel(
        category=traces[0].category,
        abstraction=abstraction,
        alpha=alpha,
        trace_count=len(traces),
        states=frozenset(states),
        counts=counts,
        arg_observations=arg_observations,
    )


def sequence_log_prob(model: MarkovModel, steps: list[StepInstance]) -> float:
    """Log probability of START -> steps -> END; -inf on any zero transition."""
    if not steps:
        raise ValueError("steps must be non-empty")
    path = [START] + [model.state_of(s) for s in steps] + [END]
    total = 0.0
    for source, target in zip(path, path[1:]):
        p = model.transition_prob(source, target)
        if p == 0.0:
            return -math.inf
        total += math.log(p)
    return total


@dataclass(frozen=True)
class NextStepResult:
    """Top-k next-step suggestions plus end-of-task likelihood."""

    suggestions: tuple[Suggestion, ...]
    terminal_probability: float
    unknown_state: bool = False


def suggest_next(
    model: MarkovModel, prefix: list[StepInstance], k: int = 3
) -> NextStepResult:
    """Rank successors of the prefix's last state (START for an empty prefix)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    state = model.state_of(prefix[-1]) if prefix else START
    if state != START and state not in model.states:
        return NextStepResult(suggestions=(), terminal_probability=0.0, unknown_state=True)
    row = model.transition_probs(state)
    suggestions = []
    for target, p in row.items():
        if target == END or p == 0.0:
            continue
        step = StepInstance(kind=target.kind, args=model.modal_args(target))
        suggestions.append(
            Suggestion(
                kind=NEXT_STEP,
                payload=step,
                score=p,
                provenance=f"markov:{model.category}:{model.abstraction}",
            )
        )
    ranked = sort_suggestions(suggestions)[:k]
    return NextStepResult(
        suggestions=tuple(ranked),
        terminal_probability=row.get(END, 0.0),
    )


def detect_branches(model: MarkovModel, threshold: float) -> list[Suggestion]:
    """Find states with at least two sufficiently probable non-END successors."""
    if not 0 < threshold < 1:
        raise ValueError("threshold must be in (0, 1)")
    suggestions = []
    for state in sorted({START} | model.states, key=state_sort_key):
        row = model.transition_probs(state)
        qualifying = sorted(
            ((t, p) for t, p in row.items() if t != END and p >= threshold),
            key=lambda tp: (-tp[1], state_sort_key(tp[0])),
        )
        if len(qualifying) < 2:
            continue
        suggestions.append(
            Suggestion(
                kind=BRANCH_POINT,
                payload=BranchPoint(state=state, alternatives=tuple(qualifying)),
                score=qualifying[1][1],
                provenance=f"markov:{model.category}:{model.abstraction}",
            )
        )
    return sort_suggestions(suggestions)


def _state_to_json(state: StateKey) -> dict:
    return {
        "kind": state.kind,
        "args": list(state.arg_signature) if state.arg_signature is not None else None,
    }


def _state_from_json(obj: dict) -> StateKey:
    args = obj.get("args")
    return StateKey(obj["kind"], tuple(args) if args is not None else None)


def model_to_json(model: MarkovModel) -> str:
    """Export as JSON: counts are authoritative, probabilities recomputed on load."""
    ordered = sorted({START, END} | model.states, key=state_sort_key)
    index = {s: i for i, s in enumerate(ordered)}
    matrix = [[0] * len(ordered) for _ in ordered]
    for source, row in model.counts.items():
        for target, count in row.items():
            matrix[index[source]][index[target]] = count
    doc = {
        "category": model.category,
        "abstraction": model.abstraction,
        "alpha": model.alpha,
        "states": [_state_to_json(s) for s in ordered],
        "counts": matrix,
        "trace_count": model.trace_count,
        # Extra (not part of the minimal schema): keeps modal-arg payloads
        # available after a round trip.
        "arg_modes": {
            str(index[s]): [
                list(sig)
                for sig, _ in sorted(c.items(), key=lambda kv: (-kv[1], kv[0]))
            ]
            for s, c in sorted(model.arg_observations.items(), key=lambda kv: index[kv[0]])
        },
    }
    return json.dumps(doc, ensure_ascii=False, indent=2)


def model_from_json(text: str) -> MarkovModel:
    doc = json.loads(text)
    ordered = [_state_from_json(s) for s in doc["states"]]
    counts: dict[StateKey, dict[StateKey, int]] = {}
    for i, row in enumerate(doc["counts"]):
        for j, count in enumerate(row):
            if count:
                counts.setdefault(ordered[i], {})[ordered[j]] = count
    states = frozenset(s for s in ordered if not s.is_sentinel())
    arg_observations: dict[StateKey, Counter] = {}
    for key, signatures in doc.get("arg_modes", {}).items():
        state = ordered[int(key)]
        # Descending rank re-encoded as descending counts to preserve the mode.
        arg_observations[state] = Counter(
            {tuple(sig): len(signatures) - r for r, sig in enumerate(signatures)}
        )
    return MarkovModel(
        category=doc["category"],
        abstraction=doc["abstraction"],
        alpha=doc["alpha"],
        trace_count=doc["trace_count"],
        states=states,
        counts=counts,
        arg_observations=arg_observations,
    )
