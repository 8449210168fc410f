"""Decode a noisy step sequence against the learned transition model.

An HMM layers a soft emission model on top of the transition model, so
a timeline with a mislabeled or unknown step can still be snapped onto
the most plausible canonical path.
"""
import math

from tasktraces import (
    Hmm,
    ObservedStep,
    build_markov,
    forward_likelihood,
    viterbi,
)

from _sample_data import mail_traces


def main():
    model = build_markov(mail_traces())
    hmm = Hmm(transitions=model)

    observations = [
        ObservedStep(kind="move_to", arg_tokens=frozenset({"front", "door"})),
        ObservedStep(kind=None, arg_tokens=frozenset({"mail"})),  # unreadable
        ObservedStep(kind="deliver", arg_tokens=frozenset({"mail", "office"})),
    ]

    result = viterbi(hmm, observations)
    print("most likely hidden path:")
    for obs, state in zip(observations, result.path):
        print(f"  observed {obs.kind or '?':>8}  ->  {state.kind}")
    print(f"log score: {result.log_score:.4f}")

    log_likelihood = forward_likelihood(hmm, observations)
    print(f"total sequence likelihood: {math.exp(log_likelihood):.6f} "
          f"(log {log_likelihood:.4f})")


if __name__ == "__main__":
    main()
