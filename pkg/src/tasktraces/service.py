"""HTTP/JSON backend for trace collection and authoring assistance."""
from __future__ import annotations

import json
import os
import secrets
import threading
from dataclasses import dataclass

from fastapi import FastAPI, Header, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from .categories import CATEGORIES, is_known_category
from .dataset import (
    Dataset,
    SchemaError,
    dataset_stats,
    trace_from_dict,
    trace_to_dict,
)
from .markov import (
    ABSTRACTION_KIND,
    MarkovModel,
    StateKey,
    build_markov,
)
from .steps import STEP_DESCRIPTIONS, STEP_KINDS, STEP_SCHEMAS, StepInstance
from .suggest import SuggestConfig, suggest_edits
from .suggestions import BranchPoint, LoopRegion, MissingStep, Suggestion
from .trace import Trace, ValidationReport, validate_trace


@dataclass(frozen=True)
class ServiceConfig:
    listen: str = "127.0.0.1:8000"
    data_dir: str = "./data"
    abstraction: str = ABSTRACTION_KIND
    alpha: float = 0.0
    suggest_k: int = 3
    branch_threshold: float = 0.2
    rebuild_every: int = 10  # approved submissions between automatic rebuilds


@dataclass(frozen=True)
class StoreRecord:
    trace: Trace
    status: str  # approved | rejected | pending_review
    report: ValidationReport


def _record_to_dict(record: StoreRecord) -> dict:
    return {
        "trace": trace_to_dict(record.trace),
        "status": record.status,
        "report": {
            "verdict": record.report.verdict,
            "violations": [
                {"rule": rule, "message": message}
                for rule, message in record.report.violations
            ],
        },
    }


def _record_from_dict(obj: dict) -> StoreRecord:
    trace = trace_from_dict(obj["trace"], path="$.trace")
    report = ValidationReport(
        verdict=obj["report"]["verdict"],
        violations=tuple(
            (v["rule"], v["message"]) for v in obj["report"]["violations"]
        ),
    )
    return StoreRecord(trace=trace, status=obj["status"], report=report)


class TraceStore:
    """Append-only JSON-lines record log.  Later records supersede earlier
    ones with the same trace id."""

    def __init__(self, data_dir: str):
        if not os.path.isdir(data_dir):
            raise ValueError(f"data directory does not exist: {data_dir}")
        self.path = os.path.join(data_dir, "records.jsonl")
        self._lock = threading.Lock()
        self._records: list[StoreRecord] = []
        if os.path.exists(self.path):
            with open(self.path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        self._records.append(_record_from_dict(json.loads(line)))

    def append(self, record: StoreRecord) -> None:
        line = json.dumps(_record_to_dict(record), ensure_ascii=False, separators=(",", ":"))
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            self._records.append(record)

    def records(self) -> list[StoreRecord]:
        with self._lock:
            return list(self._records)

    def approved_traces(self) -> list[Trace]:
        latest: dict[str, StoreRecord] = {}
        for record in self.records():
            latest[record.trace.id] = record
        return [r.trace for r in latest.values() if r.status == "approved"]


class ModelRegistry:
    """Per-category models, swapped wholesale on rebuild."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        self._lock = threading.Lock()
        # slug -> (version, model, traces the model was built from)
        self._models: dict[str, tuple[int, MarkovModel, list[Trace]]] = {}
        self._version = 0

    def rebuild(self, approved: list[Trace]) -> dict[str, int | None]:
        by_category: dict[str, list[Trace]] = {}
        for trace in approved:
            by_category.setdefault(trace.category, []).append(trace)
        with self._lock:
            self._version += 1
            version = self._version
            models = {
                slug: (
                    version,
                    build_markov(traces, self.config.abstraction, self.config.alpha),
                    traces,
                )
                for slug, traces in by_category.items()
            }
            self._models = models  # atomic swap
        return {
            slug: (models[slug][0] if slug in models else None) for slug in CATEGORIES
        }

    def get(self, slug: str) -> tuple[int, MarkovModel, list[Trace]] | None:
        return self._models.get(slug)


def _state_json(state: StateKey) -> dict:
    return {
        "kind": state.kind,
        "args": list(state.arg_signature) if state.arg_signature is not None else None,
    }


def _step_json(step: StepInstance) -> dict:
    out: dict = {"kind": step.kind, "args": dict(step.args)}
    if step.description is not None:
        out["description"] = step.description
    return out


def suggestion_to_json(s: Suggestion) -> dict:
    payload = s.payload
    if isinstance(payload, StepInstance):
        body: dict = {"step": _step_json(payload)}
    elif isinstance(payload, MissingStep):
        body = {"position": payload.position, "step": _step_json(payload.step)}
    elif isinstance(payload, LoopRegion):
        body = {
            "start": payload.start,
            "period": payload.period,
            "repetitions": payload.repetitions,
        }
    elif isinstance(payload, BranchPoint):
        body = {
            "state": _state_json(payload.state),
            "alternatives": [
                {"state": _state_json(t), "probability": p}
                for t, p in payload.alternatives
            ],
        }
    else:
        raise TypeError(f"unknown payload type {type(payload).__name__}")
    return {"kind": s.kind, "payload": body, "score": s.score, "provenance": s.provenance}


def _parse_hint(raw: object) -> list[StepInstance]:
    if not isinstance(raw, list):
        raise SchemaError("$.hint", "hint must be an array of steps")
    from .dataset import _parse_step  # shared step parsing

    return [_parse_step(s, f"$.hint[{i}]") for i, s in enumerate(raw)]


def create_app(config: ServiceConfig) -> FastAPI:
    app = FastAPI(title="tasktraces")
    store = TraceStore(config.data_dir)
    registry = ModelRegistry(config)
    registry.rebuild(store.approved_traces())
    sessions: set[str] = set()
    sessions_lock = threading.Lock()
    counter_lock = threading.Lock()
    counter = {"approved": 0}

    def schema_response(exc: SchemaError, status: int = 422) -> JSONResponse:
        return JSONResponse(
            status_code=status,
            content={"error": "schema", "path": exc.path, "message": exc.message},
        )

    @app.get("/categories")
    def list_categories():
        return [
            {
                "slug": cat.slug,
                "prompt_text": cat.prompt_text,
                "layout_hints": [list(h) for h in cat.layout_hints],
            }
            for cat in CATEGORIES.values()
        ]

    @app.get("/categories/{slug}/steps")
    def category_steps(slug: str):
        if not is_known_category(slug):
            return JSONResponse(status_code=404, content={"error": f"unknown category {slug!r}"})
        return [
            {
                "kind": kind,
                "slots": list(STEP_SCHEMAS[kind]),
                "description": STEP_DESCRIPTIONS[kind],
            }
            for kind in STEP_KINDS
        ]

    @app.post("/sessions/acknowledge")
    def acknowledge(body: dict | None = None):
        session_id = (body or {}).get("session_id") or secrets.token_hex(16)
        with sessions_lock:
            sessions.add(session_id)
        return {"session_id": session_id, "acknowledged": True}

    @app.post("/traces")
    async def submit_trace(request: Request, x_session_id: str | None = Header(default=None)):
        with sessions_lock:
            acknowledged = x_session_id in sessions
        if not acknowledged:
            return JSONResponse(
                status_code=403,
                content={"error": "session has not acknowledged the tutorial"},
            )
        try:
            obj = json.loads(await request.body())
        except json.JSONDecodeError as exc:
            return schema_response(SchemaError("$", f"malformed JSON: {exc}"), status=400)
        try:
            trace = trace_from_dict(obj)
        except SchemaError as exc:
            return schema_response(exc)
        report = validate_trace(trace)
        record = StoreRecord(trace=trace, status=report.verdict, report=report)
        try:
            store.append(record)
        except OSError as exc:
            return JSONResponse(status_code=500, content={"error": f"storage failure: {exc}"})
        if report.approved:
            with counter_lock:
                counter["approved"] += 1
                due = counter["approved"] % config.rebuild_every == 0
            if due:
                registry.rebuild(store.approved_traces())
        return JSONResponse(
            status_code=201,
            content={
                "id": trace.id,
                "status": record.status,
                "report": _record_to_dict(record)["report"],
            },
        )

    @app.get("/traces/export")
    def export_dataset():
        lines = [
            json.dumps(_record_to_dict(r), ensure_ascii=False, separators=(",", ":"))
            for r in store.records()
        ]
        return PlainTextResponse("\n".join(lines) + ("\n" if lines else ""), media_type="application/jsonl")

    @app.get("/stats")
    def get_stats():
        dataset = Dataset(traces=tuple(store.approved_traces()))
        return dataset_stats(dataset).to_dict()

    @app.post("/models/rebuild")
    def rebuild_models():
        versions = registry.rebuild(store.approved_traces())
        return {"versions": versions}

    @app.post("/categories/{slug}/suggest")
    async def get_suggestions(slug: str, request: Request):
        if not is_known_category(slug):
            return JSONResponse(status_code=404, content={"error": f"unknown category {slug!r}"})
        entry = registry.get(slug)  # snapshot pinned for the whole request
        if entry is None:
            return JSONResponse(status_code=404, content={"error": "model not ready"})
        version, model, traces = entry
        try:
            body = json.loads(await request.body() or b"{}")
            hint = _parse_hint(body.get("hint", []))
        except json.JSONDecodeError as exc:
            return schema_response(SchemaError("$", f"malformed JSON: {exc}"), status=400)
        except SchemaError as exc:
            return schema_response(exc)
        k = body.get("k", config.suggest_k)
        if not isinstance(k, int) or k < 1:
            return schema_response(SchemaError("$.k", "k must be a positive integer"))
        suggestions = suggest_edits(
            model,
            traces,
            hint,
            SuggestConfig(k=k, branch_threshold=config.branch_threshold),
        )
        return {
            "category": slug,
            "model_version": version,
            "suggestions": [suggestion_to_json(s) for s in suggestions],
        }

    app.state.store = store
    app.state.registry = registry
    return app
