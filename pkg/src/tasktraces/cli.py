"""Batch command-line entry point for the full pipeline."""
from __future__ import annotations

import argparse
import json
import sys

from .dataset import (
    SchemaError,
    dataset_stats,
    load_dataset,
    screen_dataset,
    write_traces_jsonl,
)
from .loops import detect_loops
from .markov import (
    ABSTRACTION_KIND,
    ABSTRACTION_KIND_ARGS,
    build_markov,
    model_from_json,
    model_to_json,
    suggest_next,
)
from .service import ServiceConfig, create_app, suggestion_to_json
from .steps import StepInstance

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2


def _load_hint(path: str) -> list[StepInstance]:
    from .dataset import _parse_step

    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, list):
        raise SchemaError("$", "hint file must hold an array of steps")
    return [_parse_step(s, f"$[{i}]") for i, s in enumerate(raw)]


def _print_json(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False, indent=2))


def cmd_ingest(args) -> int:
    dataset = load_dataset(args.input)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_traces_jsonl(dataset.traces, fh)
    if args.json:
        _print_json({"traces": len(dataset.traces)})
    else:
        print(f"ingested {len(dataset.traces)} trace(s)")
    return EXIT_OK


def cmd_screen(args) -> int:
    dataset = load_dataset(args.input)
    result = screen_dataset(dataset, worker_fail_threshold=args.worker_fail_threshold)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_traces_jsonl(result.approved, fh)
    if args.rejected_out:
        with open(args.rejected_out, "w", encoding="utf-8") as fh:
            write_traces_jsonl((t for t, _ in result.rejected_traces), fh)
    summary = {
        "approved": len(result.approved),
        "rejected": len(result.rejected_traces),
        "rejected_workers": list(result.rejected_workers),
    }
    if args.json:
        _print_json(summary)
    else:
        print(
            f"approved {summary['approved']}, rejected {summary['rejected']}, "
            f"rejected workers: {', '.join(summary['rejected_workers']) or 'none'}"
        )
    return EXIT_OK


def cmd_stats(args) -> int:
    dataset = load_dataset(args.input)
    summary = dataset_stats(dataset)
    if args.json:
        _print_json(summary.to_dict())
        return EXIT_OK
    d = summary.to_dict()
    print(f"traces:        {d['total_traces']}")
    print(f"workers:       {d['total_workers']}")
    print(f"total steps:   {d['total_steps']}")
    print(f"descriptions:  {d['total_descriptions']}")
    for label, key in (
        ("steps/trace", "steps_per_trace"),
        ("traces/category", "traces_per_category"),
    ):
        mean = d[f"{key}_mean"]
        if mean is None:
            print(f"{label}:   (empty)")
        else:
            print(
                f"{label}:   mean {mean:.2f}  min {d[f'{key}_min']}  max {d[f'{key}_max']}"
            )
    rate = d["description_rate"]
    print(f"description rate: {'-' if rate is None else f'{rate:.2f}'}")
    wait = d["wait_usage"]
    print(f"wait usage:       {'-' if wait is None else f'{wait:.1%}'}")
    return EXIT_OK


def cmd_build_model(args) -> int:
    dataset = load_dataset(args.input)
    traces = list(dataset.traces)
    if args.category:
        traces = [t for t in traces if t.category == args.category]
    if not traces:
        print("no traces to model", file=sys.stderr)
        return EXIT_VALIDATION
    model = build_markov(traces, abstraction=args.abstraction, alpha=args.alpha)
    doc = model_to_json(model)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc + "\n")
    else:
        print(doc)
    return EXIT_OK


def cmd_suggest(args) -> int:
    with open(args.model, encoding="utf-8") as fh:
        model = model_from_json(fh.read())
    hint = _load_hint(args.hint) if args.hint else []
    result = suggest_next(model, hint, k=args.k)
    out = {
        "unknown_state": result.unknown_state,
        "terminal_probability": result.terminal_probability,
        "suggestions": [suggestion_to_json(s) for s in result.suggestions],
    }
    if args.json:
        _print_json(out)
    else:
        if result.unknown_state:
            print("last hint step is unknown to the model")
        for s in result.suggestions:
            print(f"{s.score:.3f}  {s.payload.kind}  {dict(s.payload.args)}")
        print(f"end-of-task probability: {result.terminal_probability:.3f}")
    return EXIT_OK


def cmd_diff(args) -> int:
    from .alignment import diff_complete

    dataset = load_dataset(args.input)
    hint = _load_hint(args.hint) if args.hint else []
    suggestions = diff_complete(hint, list(dataset.traces))
    out = [suggestion_to_json(s) for s in suggestions]
    if args.json:
        _print_json(out)
    else:
        if not suggestions:
            print("no missing steps")
        for s in suggestions:
            step = s.payload.step
            print(f"insert at {s.payload.position}: {step.kind} {dict(step.args)} (score {s.score:.3f})")
    return EXIT_OK


def cmd_loops(args) -> int:
    hint = _load_hint(args.hint)
    regions = detect_loops(hint, min_reps=args.min_reps)
    out = [
        {"start": r.start, "period": r.period, "repetitions": r.repetitions}
        for r in regions
    ]
    if args.json:
        _print_json(out)
    else:
        if not regions:
            print("no repeated regions")
        for r in regions:
            print(f"start {r.start}  period {r.period}  repetitions {r.repetitions}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    host, _, port = args.listen.partition(":")
    config = ServiceConfig(
        listen=args.listen,
        data_dir=args.data_dir,
        abstraction=args.abstraction,
        alpha=args.alpha,
        suggest_k=args.k,
    )
    uvicorn.run(create_app(config), host=host or "127.0.0.1", port=int(port or 8000))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tasktraces",
        description="Ingest, screen, model, and serve household task traces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--json", action="store_true", help="emit canonical JSON output")

    p = sub.add_parser("ingest", help="parse and canonicalize a trace file")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    add_common(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("screen", help="apply the approval criteria to a dataset")
    p.add_argument("--input", required=True)
    p.add_argument("--out", help="write approved traces here")
    p.add_argument("--rejected-out", help="write rejected traces here")
    p.add_argument("--worker-fail-threshold", type=int, default=2)
    add_common(p)
    p.set_defaults(func=cmd_screen)

    p = sub.add_parser("stats", help="summarize a dataset")
    p.add_argument("--input", required=True)
    add_common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("build-model", help="build a transition model from traces")
    p.add_argument("--input", required=True)
    p.add_argument("--category")
    p.add_argument(
        "--abstraction",
        choices=[ABSTRACTION_KIND, ABSTRACTION_KIND_ARGS],
        default=ABSTRACTION_KIND,
    )
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--out")
    add_common(p)
    p.set_defaults(func=cmd_build_model)

    p = sub.add_parser("suggest", help="rank next steps after a hint")
    p.add_argument("--model", required=True)
    p.add_argument("--hint", help="JSON file with an array of steps")
    p.add_argument("--k", type=int, default=3)
    add_common(p)
    p.set_defaults(func=cmd_suggest)

    p = sub.add_parser("diff", help="find steps missing from a hint")
    p.add_argument("--input", required=True, help="trace file to diff against")
    p.add_argument("--hint", help="JSON file with an array of steps")
    add_common(p)
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("loops", help="detect repeated regions in a step sequence")
    p.add_argument("--hint", required=True, help="JSON file with an array of steps")
    p.add_argument("--min-reps", type=int, default=2)
    add_common(p)
    p.set_defaults(func=cmd_loops)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--listen", default="127.0.0.1:8000")
    p.add_argument("--data-dir", required=True)
    p.add_argument(
        "--abstraction",
        choices=[ABSTRACTION_KIND, ABSTRACTION_KIND_ARGS],
        default=ABSTRACTION_KIND,
    )
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--k", type=int, default=3)
    p.set_defaults(func=cmd_serve, json=False)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"schema error at {exc.path}: {exc.message}", file=sys.stderr)
        return EXIT_VALIDATION
    except (OSError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
