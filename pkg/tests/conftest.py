from __future__ import annotations

import random
from datetime import datetime, timezone

import pytest
from hypothesis import strategies as st

from tasktraces import CATEGORY_SLUGS, STEP_KINDS, Trace, make_step
from tasktraces.steps import STEP_SCHEMAS, StepInstance

T0 = datetime(2022, 1, 1, tzinfo=timezone.utc)

_WORDS = [
    "mail",
    "front door",
    "kitchen table",
    "office",
    "guest 1",
    "living room",
    "package",
    "remote",
    "hallway light",
    "bedtime story",
]


def f1_traces() -> list[Trace]:
    """Three small mail traces with hand-countable transition structure."""
    return [
        Trace(
            id="t1",
            category="mail",
            worker_id="w1",
            created_at=T0,
            steps=(
                make_step("move_to", "front door"),
                make_step("grab", "mail"),
                make_step("deliver", "mail", "kitchen table"),
            ),
        ),
        Trace(
            id="t2",
            category="mail",
            worker_id="w1",
            created_at=T0,
            steps=(
                make_step("move_to", "front door"),
                make_step("grab", "mail"),
                make_step("deliver", "mail", "office"),
            ),
        ),
        Trace(
            id="t3",
            category="mail",
            worker_id="w1",
            created_at=T0,
            steps=(
                make_step("find", "mail"),
                make_step("grab", "mail"),
                make_step("deliver", "mail", "office"),
            ),
        ),
    ]


@pytest.fixture
def f1() -> list[Trace]:
    return f1_traces()


def random_step(rng: random.Random, kinds=STEP_KINDS) -> StepInstance:
    kind = rng.choice(kinds)
    slots = STEP_SCHEMAS[kind]
    description = rng.choice(_WORDS) if rng.random() < 0.3 else None
    return StepInstance(
        kind=kind,
        args={slot: rng.choice(_WORDS) for slot in slots},
        description=description,
    )


def random_trace(
    rng: random.Random,
    trace_id: str,
    worker_id: str = "w",
    category: str = "mail",
    min_steps: int = 2,
    max_steps: int = 8,
    kinds=STEP_KINDS,
) -> Trace:
    n = rng.randint(min_steps, max_steps)
    return Trace(
        id=trace_id,
        category=category,
        worker_id=worker_id,
        created_at=T0,
        steps=tuple(random_step(rng, kinds) for _ in range(n)),
    )


# --- hypothesis strategies ---------------------------------------------------

arg_text = st.sampled_from(_WORDS)


@st.composite
def valid_steps(draw):
    kind = draw(st.sampled_from(STEP_KINDS))
    slots = STEP_SCHEMAS[kind]
    args = {slot: draw(arg_text) for slot in slots}
    description = draw(st.one_of(st.none(), arg_text))
    return StepInstance(kind=kind, args=args, description=description)


@st.composite
def valid_traces(draw, min_steps: int = 2, max_steps: int = 8):
    return Trace(
        id=draw(st.uuids()).hex,
        category=draw(st.sampled_from(sorted(CATEGORY_SLUGS))),
        worker_id=draw(st.from_regex(r"w[0-9]{1,4}", fullmatch=True)),
        created_at=draw(
            st.datetimes(
                min_value=datetime(2020, 1, 1),
                max_value=datetime(2030, 1, 1),
            ).map(lambda d: d.replace(tzinfo=timezone.utc))
        ),
        steps=tuple(
            draw(st.lists(valid_steps(), min_size=min_steps, max_size=max_steps))
        ),
        feedback=draw(st.one_of(st.none(), arg_text)),
    )
