"""The 18 task categories: prompt text and home-layout hover hints."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

# Every prompt closes with the same open-endedness statement.
PROMPT_CLOSING = (
    "This task is very open-ended, so please use your imagination based on "
    "your past experiences and the steps that YOU would perform in this situation!"
)

_OPENING = "Imagine that you live in the home shown to the left"


@dataclass(frozen=True)
class TaskCategory:
    slug: str
    prompt_text: str
    layout_hints: tuple[tuple[str, str], ...] = field(default_factory=tuple)


def _cat(slug: str, body: str, hints: tuple[tuple[str, str], ...]) -> TaskCategory:
    return TaskCategory(slug, f"{_OPENING}, {body} {PROMPT_CLOSING}", hints)


_COMMON_HINTS: tuple[tuple[str, str], ...] = (
    ("front door", "The home's entrance; the mail slot is here."),
    ("living room", "Couch, TV, and a coffee table."),
    ("kitchen", "Counters, a table, and the pantry."),
    ("bedroom", "Bed, dresser, and a nightstand."),
    ("office", "Desk with a computer and a landline phone."),
    ("hallway", "Connects every room; light switches along the wall."),
)

CATEGORIES: dict[str, TaskCategory] = {
    c.slug: c
    for c in (
        _cat(
            "mail",
            "and the mail has just arrived through a slot in the front door. "
            "Before opening any of the letters or packages and starting from "
            "anywhere in the home, what steps would you take to fetch the mail?",
            _COMMON_HINTS,
        ),
        _cat(
            "greeting",
            "and a guest has just arrived at the front door. Starting from "
            "anywhere in the home, what steps would you take to greet the guest "
            "and make them feel welcome?",
            _COMMON_HINTS,
        ),
        _cat(
            "farewell",
            "and a guest who has been visiting is about to leave. What steps "
            "would you take to see the guest off?",
            _COMMON_HINTS,
        ),
        _cat(
            "groceries",
            "and bags of groceries have just been set down inside the front "
            "door. What steps would you take to put the groceries away?",
            _COMMON_HINTS,
        ),
        _cat(
            "storytelling",
            "and a child in the household has asked to hear a story before bed. "
            "What steps would you take to tell them one?",
            _COMMON_HINTS,
        ),
        _cat(
            "alarm",
            "and someone in the household needs to be woken up at a particular "
            "time. What steps would you take to wake them?",
            _COMMON_HINTS,
        ),
        _cat(
            "announcement",
            "and there is news that everyone in the home needs to hear. What "
            "steps would you take to make the announcement to the household?",
            _COMMON_HINTS,
        ),
        _cat(
            "vacuum",
            "and the floors have gotten dirty. What steps would you take to "
            "vacuum the home?",
            _COMMON_HINTS,
        ),
        _cat(
            "answer_door",
            "and the doorbell has just rung. What steps would you take to "
            "answer the door?",
            _COMMON_HINTS,
        ),
        _cat(
            "turn_on_lights",
            "and evening has fallen, leaving the home dark. What steps would "
            "you take to turn on the lights?",
            _COMMON_HINTS,
        ),
        _cat(
            "delivery",
            "and a package has just been delivered outside the front door. "
            "What steps would you take to bring it inside and put it somewhere "
            "sensible?",
            _COMMON_HINTS,
        ),
        _cat(
            "ask_about_day",
            "and a member of the household has just come home. What steps "
            "would you take to ask them about their day?",
            _COMMON_HINTS,
        ),
        _cat(
            "phone_call",
            "and the phone in the office is ringing. What steps would you take "
            "to handle the call?",
            _COMMON_HINTS,
        ),
        _cat(
            "patrol",
            "and everyone is about to go to sleep. What steps would you take "
            "to patrol the home and make sure everything is in order for the "
            "night?",
            _COMMON_HINTS,
        ),
        _cat(
            "find",
            "and a household member has misplaced something they need. What "
            "steps would you take to find it for them?",
            _COMMON_HINTS,
        ),
        _cat(
            "dust",
            "and the surfaces around the home have collected dust. What steps "
            "would you take to dust the home?",
            _COMMON_HINTS,
        ),
        _cat(
            "declutter",
            "and things have been left scattered around the home. What steps "
            "would you take to tidy them away?",
            _COMMON_HINTS,
        ),
        _cat(
            "answer_question",
            "and a member of the household has a question they want answered. "
            "What steps would you take to find and deliver the answer?",
            _COMMON_HINTS,
        ),
    )
}

CATEGORY_SLUGS: frozenset[str] = frozenset(CATEGORIES)

assert len(CATEGORIES) == 18


def is_known_category(slug: str) -> bool:
    return slug in CATEGORIES


def categories_to_json(categories: dict[str, TaskCategory] = CATEGORIES) -> str:
    """Serialize categories to the slug -> {prompt_text, layout_hints} document."""
    doc = {
        slug: {
            "prompt_text": cat.prompt_text,
            "layout_hints": [list(h) for h in cat.layout_hints],
        }
        for slug, cat in sorted(categories.items())
    }
    return json.dumps(doc, ensure_ascii=False, indent=2)


def categories_from_json(text: str) -> dict[str, TaskCategory]:
    """Parse a slug -> {prompt_text, layout_hints} document."""
    doc = json.loads(text)
    out: dict[str, TaskCategory] = {}
    for slug, body in doc.items():
        hints = tuple((str(r), str(t)) for r, t in body.get("layout_hints", []))
        out[slug] = TaskCategory(slug, body["prompt_text"], hints)
    return out
