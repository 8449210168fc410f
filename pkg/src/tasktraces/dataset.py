"""Canonical trace JSON, dataset screening, and summary statistics."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterable, Iterator, TextIO

from .categories import CATEGORIES, TaskCategory, is_known_category
from .steps import StepInstance, is_known_kind, step_schema
from .trace import Trace, ValidationReport, validate_trace


class SchemaError(ValueError):
    """A trace document that does not fit the canonical schema.

    ``path`` is a JSON-path-style locator for the offending field.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


_TRACE_KEYS = ("id", "category", "worker_id", "created_at", "steps", "feedback")
_STEP_KEYS = ("kind", "args", "description")


def _require_str(obj: dict, key: str, path: str) -> str:
    if key not in obj:
        raise SchemaError(f"{path}.{key}", "missing required field")
    value = obj[key]
    if not isinstance(value, str):
        raise SchemaError(f"{path}.{key}", f"expected string, got {type(value).__name__}")
    return value


def _parse_timestamp(text: str, path: str) -> datetime:
    try:
        dt = datetime.fromisoformat(text.replace("Z", "+00:00"))
    except ValueError as exc:
        raise SchemaError(path, f"bad timestamp: {exc}") from None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def _format_timestamp(dt: datetime) -> str:
    dt = dt.astimezone(timezone.utc)
    if dt.microsecond:
        return dt.strftime("%Y-%m-%dT%H:%M:%S.%fZ")
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")


def _parse_step(obj: object, path: str) -> StepInstance:
    if not isinstance(obj, dict):
        raise SchemaError(path, "step must be an object")
    extra = set(obj) - set(_STEP_KEYS)
    if extra:
        raise SchemaError(path, f"unexpected field(s) {sorted(extra)}")
    kind = _require_str(obj, "kind", path)
    if not is_known_kind(kind):
        raise SchemaError(f"{path}.kind", f"UNKNOWN_KIND: {kind!r}")
    slots = step_schema(kind)
    raw_args = obj.get("args", {})
    if not isinstance(raw_args, dict):
        raise SchemaError(f"{path}.args", "args must be an object")
    if tuple(raw_args.keys()) != slots:
        raise SchemaError(
            f"{path}.args",
            f"BAD_STEP_ARGS: {kind} expects {list(slots)}, got {list(raw_args.keys())}",
        )
    args: dict[str, str] = {}
    for slot in slots:
        value = raw_args[slot]
        if not isinstance(value, str):
            raise SchemaError(f"{path}.args.{slot}", "argument value must be a string")
        args[slot] = value
    description = obj.get("description")
    if description is not None and not isinstance(description, str):
        raise SchemaError(f"{path}.description", "description must be a string")
    return StepInstance(kind=kind, args=args, description=description)


def trace_from_dict(obj: object, path: str = "$") -> Trace:
    if not isinstance(obj, dict):
        raise SchemaError(path, "trace must be an object")
    extra = set(obj) - set(_TRACE_KEYS)
    if extra:
        raise SchemaError(path, f"unexpected field(s) {sorted(extra)}")
    trace_id = _require_str(obj, "id", path)
    category = _require_str(obj, "category", path)
    if not is_known_category(category):
        raise SchemaError(f"{path}.category", f"UNKNOWN_CATEGORY: {category!r}")
    worker_id = _require_str(obj, "worker_id", path)
    created_at = _parse_timestamp(_require_str(obj, "created_at", path), f"{path}.created_at")
    raw_steps = obj.get("steps")
    if not isinstance(raw_steps, list) or not raw_steps:
        raise SchemaError(f"{path}.steps", "steps must be a non-empty array")
    steps = tuple(
        _parse_step(s, f"{path}.steps[{i}]") for i, s in enumerate(raw_steps)
    )
    feedback = obj.get("feedback")
    if feedback is not None and not isinstance(feedback, str):
        raise SchemaError(f"{path}.feedback", "feedback must be a string")
    return Trace(
        id=trace_id,
        category=category,
        worker_id=worker_id,
        created_at=created_at,
        steps=steps,
        feedback=feedback,
    )


def parse_trace(document: str) -> Trace:
    """Parse one canonical trace JSON document."""
    try:
        obj = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"malformed JSON: {exc}") from None
    return trace_from_dict(obj)


def trace_to_dict(trace: Trace) -> dict:
    """Canonical dict form: fixed key order, optional fields omitted when absent."""
    steps = []
    for step in trace.steps:
        s: dict = {"kind": step.kind, "args": dict(step.args)}
        if step.description is not None:
            s["description"] = step.description
        steps.append(s)
    doc: dict = {
        "id": trace.id,
        "category": trace.category,
        "worker_id": trace.worker_id,
        "created_at": _format_timestamp(trace.created_at),
        "steps": steps,
    }
    if trace.feedback is not None:
        doc["feedback"] = trace.feedback
    return doc


def serialize_trace(trace: Trace) -> str:
    """Canonical serialization: UTF-8, fixed key order, compact separators."""
    return json.dumps(trace_to_dict(trace), ensure_ascii=False, separators=(",", ":"))


@dataclass(frozen=True)
class Dataset:
    traces: tuple[Trace, ...]
    categories: dict[str, TaskCategory] = field(default_factory=lambda: dict(CATEGORIES))

    def __post_init__(self):
        seen: set[str] = set()
        for t in self.traces:
            if t.id in seen:
                raise ValueError(f"duplicate trace id {t.id!r}")
            seen.add(t.id)

    def by_category(self, slug: str) -> list[Trace]:
        return [t for t in self.traces if t.category == slug]


def read_traces_jsonl(lines: Iterable[str]) -> Iterator[Trace]:
    for i, line in enumerate(lines):
        line = line.strip()
        if not line:
            continue
        try:
            yield parse_trace(line)
        except SchemaError as exc:
            raise SchemaError(f"line {i + 1} {exc.path}", exc.message) from None


def load_dataset(path: str) -> Dataset:
    with open(path, encoding="utf-8") as fh:
        return Dataset(traces=tuple(read_traces_jsonl(fh)))


def write_traces_jsonl(traces: Iterable[Trace], out: TextIO) -> None:
    for trace in traces:
        out.write(serialize_trace(trace))
        out.write("\n")


@dataclass(frozen=True)
class StatsSummary:
    """Dataset-level descriptive statistics.

    Means are None on empty input ("absent"), never NaN.  Per-category
    aggregates cover only categories with at least one trace.
    """

    total_traces: int
    total_workers: int
    traces_per_category: dict[str, int]
    traces_per_category_mean: float | None
    traces_per_category_min: int | None
    traces_per_category_max: int | None
    steps_per_trace_mean: float | None
    steps_per_trace_min: int | None
    steps_per_trace_max: int | None
    total_steps: int
    total_descriptions: int
    description_rate: float | None
    wait_usage: float | None

    def to_dict(self) -> dict:
        return {
            "total_traces": self.total_traces,
            "total_workers": self.total_workers,
            "traces_per_category": dict(sorted(self.traces_per_category.items())),
            "traces_per_category_mean": self.traces_per_category_mean,
            "traces_per_category_min": self.traces_per_category_min,
            "traces_per_category_max": self.traces_per_category_max,
            "steps_per_trace_mean": self.steps_per_trace_mean,
            "steps_per_trace_min": self.steps_per_trace_min,
            "steps_per_trace_max": self.steps_per_trace_max,
            "total_steps": self.total_steps,
            "total_descriptions": self.total_descriptions,
            "description_rate": self.description_rate,
            "wait_usage": self.wait_usage,
        }


def dataset_stats(dataset: Dataset) -> StatsSummary:
    """Exact counts and full-precision means over a dataset.

    Invariant under trace reordering; description_rate * total_steps equals
    total_descriptions exactly.
    """
    traces = dataset.traces
    per_category: dict[str, int] = {}
    workers: set[str] = set()
    workers_with_wait: set[str] = set()
    total_steps = 0
    total_descriptions = 0
    step_counts: list[int] = []
    for t in traces:
        per_category[t.category] = per_category.get(t.category, 0) + 1
        workers.add(t.worker_id)
        step_counts.append(len(t.steps))
        total_steps += len(t.steps)
        for step in t.steps:
            if step.description is not None:
                total_descriptions += 1
            if step.kind == "wait":
                workers_with_wait.add(t.worker_id)

    cat_counts = list(per_category.values())
    return StatsSummary(
        total_traces=len(traces),
        total_workers=len(workers),
        traces_per_category=per_category,
        traces_per_category_mean=(sum(cat_counts) / len(cat_counts)) if cat_counts else None,
        traces_per_category_min=min(cat_counts) if cat_counts else None,
        traces_per_category_max=max(cat_counts) if cat_counts else None,
        steps_per_trace_mean=(total_steps / len(traces)) if traces else None,
        steps_per_trace_min=min(step_counts) if step_counts else None,
        steps_per_trace_max=max(step_counts) if step_counts else None,
        total_steps=total_steps,
        total_descriptions=total_descriptions,
        description_rate=(total_descriptions / total_steps) if total_steps else None,
        wait_usage=(len(workers_with_wait) / len(workers)) if workers else None,
    )


@dataclass(frozen=True)
class ScreenResult:
    approved: tuple[Trace, ...]
    rejected_traces: tuple[tuple[Trace, ValidationReport], ...]
    rejected_workers: tuple[str, ...]


def screen_dataset(dataset: Dataset, worker_fail_threshold: int = 2) -> ScreenResult:
    """Partition a dataset into approved and rejected traces.

    Each trace is validated individually; a worker whose rejected-trace count
    reaches ``worker_fail_threshold`` loses all their traces and is listed in
    rejected_workers.  A worker below the threshold keeps their valid traces.
    """
    reports = {t.id: validate_trace(t) for t in dataset.traces}
    failures_by_worker: dict[str, int] = {}
    for t in dataset.traces:
        if not reports[t.id].approved:
            failures_by_worker[t.worker_id] = failures_by_worker.get(t.worker_id, 0) + 1

    rejected_workers = tuple(
        sorted(w for w, n in failures_by_worker.items() if n >= worker_fail_threshold)
    )
    banned = set(rejected_workers)

    approved: list[Trace] = []
    rejected: list[tuple[Trace, ValidationReport]] = []
    for t in dataset.traces:
        report = reports[t.id]
        if report.approved and t.worker_id not in banned:
            approved.append(t)
        else:
            rejected.append((t, report))
    return ScreenResult(
        approved=tuple(approved),
        rejected_traces=tuple(rejected),
        rejected_workers=rejected_workers,
    )
