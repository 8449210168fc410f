"""Align a partial timeline against finished demonstrations.

The alignment is a classic edit-distance dynamic program with a
cheaper cost for substituting two steps of the same kind.  On top of
it, `diff_complete` compares a partial timeline to the closest full
demonstration and reports which steps look missing.
"""
from tasktraces import align, diff_complete, make_step

from _sample_data import mail_traces


def main():
    traces = mail_traces()

    source = [make_step("grab", "mail")]
    target = list(traces[0].steps)
    result = align(source, target)
    print("alignment of a 1-step timeline to t1 (cost", result.cost, "):")
    for op in result.ops:
        print(" ", op)

    print("\nmissing-step suggestions for a timeline that skipped the start:")
    hint = list(traces[0].steps[1:])
    for s in diff_complete(hint, traces):
        p = s.payload
        print(f"  insert {p.step.kind} {dict(p.step.args)} at position "
              f"{p.position}  score={s.score:.2f}  ({s.provenance})")


if __name__ == "__main__":
    main()
