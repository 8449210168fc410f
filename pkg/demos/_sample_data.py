"""A tiny shared dataset used by the demo scripts.

Three workers teach the robot how to fetch the mail.  The traces are
short on purpose so every probability in the demos can be checked by
hand.
"""
from datetime import datetime, timezone

from tasktraces import Trace, make_step

WHEN = datetime(2022, 1, 1, tzinfo=timezone.utc)


def mail_traces() -> list[Trace]:
    return [
        Trace(
            id="t1",
            category="mail",
            worker_id="w1",
            created_at=WHEN,
            steps=(
                make_step("move_to", "front door"),
                make_step("grab", "mail"),
                make_step("deliver", "mail", "kitchen table"),
            ),
        ),
        Trace(
            id="t2",
            category="mail",
            worker_id="w2",
            created_at=WHEN,
            steps=(
                make_step("move_to", "front door"),
                make_step("grab", "mail"),
                make_step("deliver", "mail", "office"),
            ),
        ),
        Trace(
            id="t3",
            category="mail",
            worker_id="w3",
            created_at=WHEN,
            steps=(
                make_step("find", "mail"),
                make_step("grab", "mail"),
                make_step("deliver", "mail", "office"),
            ),
        ),
    ]
