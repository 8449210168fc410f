"""Hidden-state decoding of ambiguous step sequences over a transition model."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .markov import START, MarkovModel, StateKey, state_sort_key
from .steps import STEP_KINDS, StepInstance, canonicalize


@dataclass(frozen=True)
class ObservedStep:
    """A possibly ambiguous observation: kind and/or args may be unknown.

    ``kind=None`` models an utterance whose step type is unclear (for example
    "that goes over there"); ``arg_tokens`` holds whatever canonical argument
    tokens could be extracted, possibly none.
    """

    kind: str | None = None
    arg_tokens: frozenset[str] = field(default_factory=frozenset)

    @classmethod
    def from_step(cls, step: StepInstance) -> "ObservedStep":
        return cls(kind=step.kind, arg_tokens=step.arg_tokens())

    @classmethod
    def unknown(cls, *tokens: str) -> "ObservedStep":
        return cls(kind=None, arg_tokens=frozenset(canonicalize(t) for t in tokens))


@dataclass(frozen=True)
class Hmm:
    """A Markov transition model plus an emission model over observations.

    Emission of state s for observation o: p_match when kinds agree,
    (1 - p_match)/(|kinds| - 1) when both are known and disagree, uniform
    1/|kinds| when o's kind is unknown; multiplied by
    w * jaccard(args) + (1 - w), where the Jaccard overlap is 1 whenever
    either side has no argument tokens.
    """

    transitions: MarkovModel
    p_match: float = 0.9
    arg_similarity_weight: float = 0.5

    def __post_init__(self):
        if not 0 < self.p_match < 1:
            raise ValueError("p_match must be in (0, 1)")
        if not 0 <= self.arg_similarity_weight <= 1:
            raise ValueError("arg_similarity_weight must be in [0, 1]")

    def _state_tokens(self, state: StateKey) -> frozenset[str]:
        if state.arg_signature is not None:
            return frozenset(t for t in state.arg_signature if t)
        modal = self.transitions.modal_args(state)
        return frozenset(canonicalize(v) for v in modal.values() if canonicalize(v))

    def raw_emission(self, state: StateKey, obs: ObservedStep) -> float:
        n_kinds = len(STEP_KINDS)
        if obs.kind is None:
            kind_score = 1.0 / n_kinds
        elif obs.kind == state.kind:
            kind_score = self.p_match
        else:
            kind_score = (1.0 - self.p_match) / (n_kinds - 1)
        state_tokens = self._state_tokens(state)
        if not obs.arg_tokens or not state_tokens:
            overlap = 1.0
        else:
            union = obs.arg_tokens | state_tokens
            overlap = len(obs.arg_tokens & state_tokens) / len(union)
        w = self.arg_similarity_weight
        return kind_score * (w * overlap + (1.0 - w))

    def emission_table(
        self, observations: list[ObservedStep]
    ) -> dict[tuple[StateKey, int], float]:
        """Per-state scores normalized over the sequence's observation alphabet.

        Observations that compare equal share one alphabet slot, so a
        sequence over a single repeated unknown observation emits 1.
        """
        alphabet = []
        for obs in observations:
            if obs not in alphabet:
                alphabet.append(obs)
        table: dict[tuple[StateKey, int], float] = {}
        for state in self.transitions.states:
            raw = {obs: self.raw_emission(state, obs) for obs in alphabet}
            total = sum(raw.values())
            for i, obs in enumerate(observations):
                table[(state, i)] = raw[obs] / total if total > 0 else 0.0
        return table


@dataclass(frozen=True)
class DecodeResult:
    path: tuple[StateKey, ...]
    log_score: float

    @property
    def inconsistent(self) -> bool:
        return math.isinf(self.log_score) and self.log_score < 0


def _log(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


def viterbi(hmm: Hmm, observations: list[ObservedStep]) -> DecodeResult:
    """Most likely hidden state path for the observations.

    Ties in the backpointers break by state sort order.  A zero-likelihood
    input yields an empty path with log score -inf (inconsistent), not an
    exception.
    """
    if not observations:
        raise ValueError("observations must be non-empty")
    model = hmm.transitions
    states = sorted(model.states, key=state_sort_key)
    emit = hmm.emission_table(observations)

    # scores[t][s]: best log score of a path ending in s after t+1 observations
    scores: list[dict[StateKey, float]] = []
    back: list[dict[StateKey, StateKey]] = []
    first = {
        s: _log(model.transition_prob(START, s)) + _log(emit[(s, 0)]) for s in states
    }
    scores.append(first)
    for t in range(1, len(observations)):
        row: dict[StateKey, float] = {}
        ptr: dict[StateKey, StateKey] = {}
        for s in states:
            best_prev, best_val = None, -math.inf
            for prev in states:
                val = scores[-1][prev] + _log(model.transition_prob(prev, s))
                if val > best_val:
                    best_prev, best_val = prev, val
            row[s] = best_val + _log(emit[(s, t)])
            ptr[s] = best_prev
        scores.append(row)
        back.append(ptr)

    final = scores[-1]
    best_state, best_val = None, -math.inf
    for s in states:  # sorted order: first state wins ties
        if final[s] > best_val:
            best_state, best_val = s, final[s]
    if best_state is None or best_val == -math.inf:
        return DecodeResult(path=(), log_score=-math.inf)
    path = [best_state]
    for ptr in reversed(back):
        path.append(ptr[path[-1]])
    path.reverse()
    return DecodeResult(path=tuple(path), log_score=best_val)


def forward_likelihood(hmm: Hmm, observations: list[ObservedStep]) -> float:
    """Log likelihood of the observations, summed over all hidden paths."""
    if not observations:
        raise ValueError("observations must be non-empty")
    model = hmm.transitions
    states = sorted(model.states, key=state_sort_key)
    emit = hmm.emission_table(observations)

    forward = {s: model.transition_prob(START, s) * emit[(s, 0)] for s in states}
    for t in range(1, len(observations)):
        forward = {
            s: sum(forward[p] * model.transition_prob(p, s) for p in states) * emit[(s, t)]
            for s in states
        }
    total = sum(forward.values())
    return _log(total)
