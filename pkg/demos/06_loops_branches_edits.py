"""Spot repetition, branching, and combine every analysis into one list.

`detect_loops` finds tandem repeats at the step-kind level (a hint the
user may want a for-each loop); `detect_branches` finds states where
demonstrations disagree about what comes next; `suggest_edits` unions
all analyses, deduplicates, and ranks them by score.
"""
from tasktraces import (
    build_markov,
    detect_branches,
    detect_loops,
    make_step,
    suggest_edits,
)

from _sample_data import mail_traces


def main():
    groceries = [
        make_step("grab", "apples"),
        make_step("place", "apples", "pantry"),
        make_step("grab", "milk"),
        make_step("place", "milk", "fridge"),
    ]
    print("tandem repeats in a groceries timeline:")
    for region in detect_loops(groceries):
        print(f"  start={region.start} period={region.period} "
              f"repetitions={region.repetitions}")

    traces = mail_traces()
    model = build_markov(traces)
    print("\nbranch points in the mail model:")
    for s in detect_branches(model, threshold=0.2):
        alts = ", ".join(f"{st.kind}:{p:.2f}" for st, p in s.payload.alternatives)
        print(f"  after {s.payload.state.kind or 'START'}: {alts}")

    print("\ncombined suggestions for an empty timeline:")
    for s in suggest_edits(model, traces, []):
        print(f"  [{s.kind}] score={s.score:.3f}  {s.payload}")


if __name__ == "__main__":
    main()
