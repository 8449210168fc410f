"""Validate individual traces and screen a whole dataset.

Shows the per-trace rule checks (minimum length, argument schema,
closed vocabularies) and the worker-level screening policy: one
rejected trace only removes that trace, while a worker with two or
more rejections loses everything they submitted.
"""
from tasktraces import Dataset, make_step, screen_dataset, validate_trace

from _sample_data import WHEN, mail_traces
from tasktraces import Trace


def main():
    traces = mail_traces()

    print("== per-trace validation ==")
    for trace in traces:
        report = validate_trace(trace)
        print(f"{trace.id}: {report.verdict}")

    too_short = Trace(
        id="bad1",
        category="mail",
        worker_id="w1",
        created_at=WHEN,
        steps=(make_step("wait"),),
    )
    report = validate_trace(too_short)
    print(f"{too_short.id}: {report.verdict} {report.rule_ids()}")

    print("\n== screening, one bad trace ==")
    result = screen_dataset(Dataset(traces=tuple(traces) + (too_short,)))
    print("approved:", [t.id for t in result.approved])
    print("rejected:", [t.id for t, _ in result.rejected_traces])
    print("rejected workers:", result.rejected_workers)

    print("\n== screening, repeat offender ==")
    second_bad = Trace(
        id="bad2",
        category="mail",
        worker_id="w1",
        created_at=WHEN,
        steps=(make_step("wait"),),
    )
    result = screen_dataset(
        Dataset(traces=tuple(traces) + (too_short, second_bad))
    )
    print("approved:", [t.id for t in result.approved])
    print("rejected workers:", result.rejected_workers)


if __name__ == "__main__":
    main()
