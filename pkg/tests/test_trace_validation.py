from datetime import datetime, timezone

from tasktraces import Trace, make_step, validate_trace
from tasktraces.steps import StepInstance
from tasktraces.trace import (
    BAD_STEP_ARGS,
    EMPTY_ARG,
    MIN_STEPS,
    RELEVANCE_FLAG,
    UNKNOWN_CATEGORY,
    UNKNOWN_KIND,
)

T0 = datetime(2022, 1, 1, tzinfo=timezone.utc)


def trace_of(*steps, category="mail"):
    return Trace(
        id="t", category=category, worker_id="w", created_at=T0, steps=tuple(steps)
    )


def test_single_step_rejected_min_steps():
    report = validate_trace(trace_of(make_step("grab", "mail")))
    assert not report.approved
    assert report.rule_ids() == {MIN_STEPS}


def test_valid_two_step_trace_approved():
    report = validate_trace(
        trace_of(make_step("approach", "guest 1"), make_step("say", "hello"))
    )
    assert report.approved
    assert report.violations == ()


def test_missing_arg_rejected():
    bad = StepInstance(kind="deliver", args={"item": "mail"})
    report = validate_trace(trace_of(make_step("grab", "mail"), bad))
    assert not report.approved
    assert BAD_STEP_ARGS in report.rule_ids()


def test_unknown_kind():
    bad = StepInstance(kind="teleport", args={})
    report = validate_trace(trace_of(make_step("grab", "mail"), bad))
    assert UNKNOWN_KIND in report.rule_ids()


def test_unknown_category():
    report = validate_trace(
        trace_of(
            make_step("grab", "mail"),
            make_step("wait"),
            category="cooking",
        )
    )
    assert UNKNOWN_CATEGORY in report.rule_ids()


def test_empty_arg_after_canonicalization():
    report = validate_trace(
        trace_of(make_step("grab", "   "), make_step("wait"))
    )
    assert EMPTY_ARG in report.rule_ids()
    assert not report.approved


def test_wait_needs_no_args_but_may_have_description():
    report = validate_trace(
        trace_of(
            make_step("grab", "mail"),
            make_step("wait", description="until someone answers"),
        )
    )
    assert report.approved


def test_relevance_flag_is_advisory():
    trace = trace_of(make_step("grab", "mail"), make_step("wait"))
    report = validate_trace(trace, relevance_note="looks off-prompt")
    assert report.approved
    assert RELEVANCE_FLAG in report.rule_ids()


def test_relevance_flag_with_real_violation_still_rejects():
    report = validate_trace(trace_of(make_step("grab", "mail")), relevance_note="n")
    assert not report.approved
    assert report.rule_ids() == {MIN_STEPS, RELEVANCE_FLAG}


def test_validation_is_deterministic():
    trace = trace_of(make_step("grab", "mail"))
    assert validate_trace(trace) == validate_trace(trace)
