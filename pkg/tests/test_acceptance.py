"""Acceptance suite: one test (and one printed pass/fail line) per criterion."""
import functools
import itertools
import json
import os
import random
import threading

import pytest
from fastapi.testclient import TestClient

from tasktraces import (
    Dataset,
    build_markov,
    dataset_stats,
    detect_loops,
    diff_complete,
    forward_likelihood,
    make_step,
    screen_dataset,
    suggest_edits,
    validate_trace,
    viterbi,
)
from tasktraces.alignment import AlignCosts, align, replay
from tasktraces.markov import END, START, StateKey
from tasktraces.hmm import Hmm
from tasktraces.service import ServiceConfig, create_app, suggestion_to_json
from tasktraces.steps import STEP_KINDS, STEP_SCHEMAS
from tasktraces.suggestions import LoopRegion, MissingStep
from tasktraces.trace import MIN_STEPS

from conftest import f1_traces, random_trace
from test_alignment import brute_min_cost, kind_seq
from test_hmm import enumerate_paths, random_observation
from test_loops import oracle_regions
from test_markov import enumerate_mass
from test_service import MAIL_TRACE, acknowledge, seed_f1, submit

PUBLISHED_DATASET = os.environ.get(
    "TASKTRACES_PUBLISHED_DATASET", os.path.join(os.path.dirname(__file__), "..", "data", "published.jsonl")
)


def criterion(name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                result = fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE {name}: FAIL")
                raise
            print(f"ACCEPTANCE {name}: PASS")
            return result

        return wrapper

    return decorate


@criterion("schema-and-validation")
def test_schema_and_validation():
    assert len(STEP_KINDS) == 17
    expected_slots = {
        "move_to": ["target"],
        "find": ["target"],
        "grab": ["item"],
        "open": ["container"],
        "close": ["container"],
        "deliver": ["item", "target"],
        "receive": ["item"],
        "place": ["item", "container"],
        "approach": ["person"],
        "say": ["exact_speech"],
        "tell": ["story"],
        "ask": ["exact_speech"],
        "activate": ["device"],
        "deactivate": ["device"],
        "vacuum": ["room"],
        "wipe": ["surface"],
        "wait": [],
    }
    assert {k: list(v) for k, v in STEP_SCHEMAS.items()} == expected_slots

    one_step = random_trace(random.Random(0), "a", min_steps=1, max_steps=1)
    report = validate_trace(one_step)
    assert not report.approved and MIN_STEPS in report.rule_ids()

    two_step = f1_traces()[0]
    assert validate_trace(two_step).approved


@criterion("screening-parity")
def test_screening_parity():
    rng = random.Random(1)

    def worker_traces(worker, lengths):
        return tuple(
            random_trace(
                rng, f"{worker}-{i}", worker, min_steps=n, max_steps=n
            )
            for i, n in enumerate(lengths)
        )

    # one failing trace: keep the remainder
    result = screen_dataset(Dataset(traces=worker_traces("wa", [1, 5, 6])))
    assert len(result.approved) == 2
    assert len(result.rejected_traces) == 1
    assert result.rejected_workers == ()

    # two failing traces: lose everything
    result = screen_dataset(Dataset(traces=worker_traces("wb", [1, 1, 6])))
    assert result.approved == ()
    assert len(result.rejected_traces) == 3
    assert result.rejected_workers == ("wb",)

    # partition property over 1000 random datasets
    for round_no in range(1000):
        n = rng.randint(0, 10)
        traces = tuple(
            random_trace(
                rng,
                f"p{round_no}-{i}",
                worker_id=f"w{rng.randint(0, 3)}",
                min_steps=1,
                max_steps=4,
            )
            for i in range(n)
        )
        result = screen_dataset(Dataset(traces=traces))
        assert len(result.approved) + len(result.rejected_traces) == n


@criterion("stats")
def test_stats():
    if os.path.exists(PUBLISHED_DATASET):
        from tasktraces import load_dataset

        stats = dataset_stats(load_dataset(PUBLISHED_DATASET))
        assert stats.total_traces == 207
        assert stats.total_workers == 70
        assert stats.steps_per_trace_mean == pytest.approx(6.23, abs=0.01)
        assert stats.steps_per_trace_min == 2
        assert stats.steps_per_trace_max == 23
        assert stats.total_steps == 1289
        assert stats.total_descriptions == 706
        assert stats.description_rate == pytest.approx(0.55, abs=0.01)
        assert stats.traces_per_category_mean == pytest.approx(11.5, abs=0.05)
        assert stats.traces_per_category_min == 10
        assert stats.traces_per_category_max == 16
        return

    # fixture suite with hand-counted values
    stats = dataset_stats(Dataset(traces=tuple(f1_traces())))
    assert stats.total_traces == 3
    assert stats.total_workers == 1
    assert stats.total_steps == 9
    assert stats.steps_per_trace_mean == 3.0
    assert stats.steps_per_trace_min == 3
    assert stats.steps_per_trace_max == 3
    assert stats.traces_per_category == {"mail": 3}
    assert stats.total_descriptions == 0
    assert stats.description_rate == 0.0

    # fixture with descriptions and wait usage, hand counted
    t = f1_traces()[0]
    extra = t.__class__(
        id="tw",
        category="mail",
        worker_id="w2",
        created_at=t.created_at,
        steps=(
            make_step("wait", description="for the mail to drop"),
            make_step("grab", "mail", description="from the floor"),
        ),
    )
    stats = dataset_stats(Dataset(traces=tuple(f1_traces()) + (extra,)))
    assert stats.total_traces == 4
    assert stats.total_workers == 2
    assert stats.total_steps == 11
    assert stats.total_descriptions == 2
    assert stats.description_rate == pytest.approx(2 / 11, abs=1e-12)
    assert stats.wait_usage == 0.5


@criterion("markov-correctness")
def test_markov_correctness():
    f1 = f1_traces()
    model = build_markov(f1)
    checks = {
        (START, StateKey("move_to")): 2 / 3,
        (START, StateKey("find")): 1 / 3,
        (StateKey("move_to"), StateKey("grab")): 1.0,
        (StateKey("find"), StateKey("grab")): 1.0,
        (StateKey("grab"), StateKey("deliver")): 1.0,
        (StateKey("deliver"), END): 1.0,
    }
    for (source, target), expected in checks.items():
        assert abs(model.transition_prob(source, target) - expected) <= 1e-12

    smoothed = build_markov(f1, alpha=1.0)
    assert abs(smoothed.transition_prob(StateKey("grab"), StateKey("deliver")) - 0.5) <= 1e-12

    for m in (model, smoothed):
        for state in {START} | m.states:
            assert abs(sum(m.transition_probs(state).values()) - 1.0) <= 1e-12

    assert enumerate_mass(model, 12) >= 0.999


@criterion("alignment-oracle")
def test_alignment_oracle():
    costs = AlignCosts()
    alphabet = ("grab", "open", "wait")
    sequences = [
        kind_seq(*kinds)
        for n in range(5)
        for kinds in itertools.product(alphabet, repeat=n)
    ]
    for source in sequences:
        for target in sequences:
            result = align(source, target, costs)
            assert result.cost == brute_min_cost(source, target, costs)
            assert replay(source, target, result) == target

    rng = random.Random(8)
    from conftest import random_step

    for _ in range(200):
        a, b, c = (
            [random_step(rng) for _ in range(rng.randint(0, 5))] for _ in range(3)
        )
        assert align(a, b, costs).cost == pytest.approx(align(b, a, costs).cost)
        assert (
            align(a, c, costs).cost
            <= align(a, b, costs).cost + align(b, c, costs).cost + 1e-9
        )


@criterion("viterbi-forward-oracle")
def test_viterbi_forward_oracle():
    rng = random.Random(13)
    f1 = f1_traces()
    for alpha in (0.0, 1.0):
        hmm = Hmm(transitions=build_markov(f1, alpha=alpha))
        assert len(hmm.transitions.states) <= 5
        for _ in range(60):
            observations = [random_observation(rng) for _ in range(rng.randint(1, 6))]
            best, total = enumerate_paths(hmm, observations)
            v = viterbi(hmm, observations).log_score
            f = forward_likelihood(hmm, observations)
            assert v == pytest.approx(best, abs=1e-9)
            assert f == pytest.approx(total, abs=1e-9)
            assert f >= v - 1e-9


@criterion("diff-self-emptiness")
def test_diff_self_emptiness():
    rng = random.Random(21)
    for i in range(1000):
        trace = random_trace(rng, f"d{i}", min_steps=2, max_steps=10)
        assert diff_complete(list(trace.steps), [trace]) == []

    # leave-one-out: the removed step comes back as the only suggestion
    for trace in f1_traces():
        for i in range(len(trace.steps)):
            hint = [s for j, s in enumerate(trace.steps) if j != i]
            suggestions = diff_complete(hint, [trace])
            assert len(suggestions) == 1
            assert suggestions[0].payload == MissingStep(position=i, step=trace.steps[i])

    # the worked F1 example: t1 minus its first step against the full fixture
    f1 = f1_traces()
    suggestions = diff_complete(list(f1[0].steps[1:]), f1)
    assert len(suggestions) == 1
    assert suggestions[0].payload == MissingStep(position=0, step=f1[0].steps[0])


@criterion("loop-detection")
def test_loop_detection():
    groceries = kind_seq("grab", "place", "grab", "place", "grab", "place")
    assert detect_loops(groceries) == [LoopRegion(start=0, period=2, repetitions=3)]

    from tasktraces import suggest_foreach

    suggestions = suggest_foreach(groceries)
    assert len(suggestions) == 1
    assert suggestions[0].payload == LoopRegion(start=0, period=2, repetitions=3)

    alphabet = ("grab", "place", "wait")
    for n in range(0, 9):
        for kinds in itertools.product(alphabet, repeat=n):
            assert detect_loops(kind_seq(*kinds)) == oracle_regions(list(kinds))


@criterion("service-durability-and-atomicity")
def test_service_durability_and_atomicity(tmp_path):
    config = ServiceConfig(data_dir=str(tmp_path), rebuild_every=1)

    # durability: submit, restart, export
    with TestClient(create_app(config)) as client:
        headers = acknowledge(client)
        assert submit(client, headers, MAIL_TRACE).status_code == 201
    with TestClient(create_app(config)) as client:
        lines = client.get("/traces/export").text.strip().splitlines()
        assert [json.loads(l)["trace"]["id"] for l in lines] == ["t1"]

        # export / re-ingest reproduces stats and models
        headers = acknowledge(client)
        for doc in _extra_docs():
            assert submit(client, headers, doc).status_code == 201
        client.post("/models/rebuild")
        stats = client.get("/stats").json()
        export = client.get("/traces/export").text
        reference = client.post("/categories/mail/suggest", json={"hint": []}).json()

    replica = tmp_path / "replica"
    replica.mkdir()
    (replica / "records.jsonl").write_text(export, encoding="utf-8")
    with TestClient(create_app(ServiceConfig(data_dir=str(replica), rebuild_every=1))) as client:
        assert client.get("/stats").json() == stats
        replayed = client.post("/categories/mail/suggest", json={"hint": []}).json()
        assert replayed["suggestions"] == reference["suggestions"]

    # atomicity: >=1000 concurrent suggests against a growing store; every
    # response must equal the output of one complete dataset prefix
    stress = tmp_path / "stress"
    stress.mkdir()
    with TestClient(create_app(ServiceConfig(data_dir=str(stress), rebuild_every=1))) as client:
        headers = acknowledge(client)
        seed_f1(client, headers)

        from tasktraces.dataset import trace_from_dict

        all_traces = f1_traces() + [trace_from_dict(d) for d in _extra_docs()]
        expected = set()
        for n in range(3, len(all_traces) + 1):
            prefix = all_traces[:n]
            body = [
                suggestion_to_json(s)
                for s in suggest_edits(build_markov(prefix), prefix, [])
            ]
            expected.add(json.dumps(body, sort_keys=True))

        errors = []

        def reader():
            for _ in range(50):
                body = client.post("/categories/mail/suggest", json={"hint": []}).json()
                if json.dumps(body["suggestions"], sort_keys=True) not in expected:
                    errors.append(body)

        def writer():
            for doc in _extra_docs():
                assert submit(client, headers, doc).status_code == 201
            for _ in range(10):
                client.post("/models/rebuild")

        threads = [threading.Thread(target=reader) for _ in range(21)]
        threads.append(threading.Thread(target=writer))
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert 21 * 50 >= 1000
        assert errors == []


def _extra_docs():
    docs = []
    first_steps = [
        {"kind": "open", "args": {"container": "front door"}},
        {"kind": "close", "args": {"container": "front door"}},
        {"kind": "approach", "args": {"person": "mail carrier"}},
        {"kind": "say", "args": {"exact_speech": "thank you"}},
        {"kind": "receive", "args": {"item": "mail"}},
    ]
    for i, step in enumerate(first_steps):
        docs.append(
            {
                "id": f"e{i}",
                "category": "mail",
                "worker_id": "w3",
                "created_at": "2022-01-03T00:00:00Z",
                "steps": [step, {"kind": "grab", "args": {"item": "mail"}}],
            }
        )
    return docs
