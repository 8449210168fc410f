"""Step vocabulary: the closed set of task step kinds and their parameter slots."""
from __future__ import annotations

from dataclasses import dataclass, field

# Kinds in toolbox order.  The order is part of the public contract: it is the
# tie-breaking order for suggestion ranking.
STEP_KINDS: tuple[str, ...] = (
    "move_to",
    "find",
    "grab",
    "open",
    "close",
    "deliver",
    "receive",
    "place",
    "approach",
    "say",
    "tell",
    "ask",
    "activate",
    "deactivate",
    "vacuum",
    "wipe",
    "wait",
)

KIND_ORDER: dict[str, int] = {kind: i for i, kind in enumerate(STEP_KINDS)}

# Slot-role names, a closed set.
PARAM_SLOTS: frozenset[str] = frozenset(
    {
        "target",
        "item",
        "container",
        "person",
        "exact_speech",
        "story",
        "device",
        "room",
        "surface",
    }
)

# Ordered slot list per kind.  wait takes no parameters.
STEP_SCHEMAS: dict[str, tuple[str, ...]] = {
    "move_to": ("target",),
    "find": ("target",),
    "grab": ("item",),
    "open": ("container",),
    "close": ("container",),
    "deliver": ("item", "target"),
    "receive": ("item",),
    "place": ("item", "container"),
    "approach": ("person",),
    "say": ("exact_speech",),
    "tell": ("story",),
    "ask": ("exact_speech",),
    "activate": ("device",),
    "deactivate": ("device",),
    "vacuum": ("room",),
    "wipe": ("surface",),
    "wait": (),
}

# One-line tooltip text per kind, shown in the toolbox UI.
STEP_DESCRIPTIONS: dict[str, str] = {
    "move_to": "move to a target",
    "find": "search for a target",
    "grab": "grab an item",
    "open": "open a container",
    "close": "close a container",
    "deliver": "bring an item to a target",
    "receive": "receive an item from someone",
    "place": "place an item in a container",
    "approach": "approach a person",
    "say": "say the exact speech as specified",
    "tell": "tell a story",
    "ask": "ask a question using exact speech",
    "activate": "turn a device on",
    "deactivate": "turn a device off",
    "vacuum": "clean a room by vacuuming it",
    "wipe": "clean a surface by wiping it",
    "wait": "wait for something to happen",
}


def is_known_kind(kind: str) -> bool:
    return kind in STEP_SCHEMAS


def step_schema(kind: str) -> tuple[str, ...]:
    """Return the ordered parameter-slot list for a step kind.

    Raises KeyError for unknown kinds; callers parse-validate kinds first.
    """
    return STEP_SCHEMAS[kind]


def canonicalize(text: str) -> str:
    """Normalize free-response text for cross-trace comparison.

    Lowercase, strip, collapse internal whitespace runs.  Idempotent.
    """
    return " ".join(text.lower().split())


@dataclass(frozen=True)
class StepInstance:
    """One parameterized task step: a kind plus named free-text arguments.

    ``args`` maps slot-role names to free-response values, in slot order.
    Construction does not enforce the schema; validation reports problems
    instead of throwing (see trace.validate_trace).
    """

    kind: str
    args: dict[str, str] = field(default_factory=dict)
    description: str | None = None

    def canonical_args(self) -> tuple[str, ...]:
        """Argument values in slot order, canonicalized."""
        return tuple(canonicalize(v) for v in self.args.values())

    def arg_tokens(self) -> frozenset[str]:
        """Canonical argument values as a set, for overlap scoring."""
        return frozenset(t for t in self.canonical_args() if t)

    def schema_ok(self) -> bool:
        """True when args exactly match the kind's slot list, in order."""
        if not is_known_kind(self.kind):
            return False
        return tuple(self.args.keys()) == STEP_SCHEMAS[self.kind]


def make_step(kind: str, *values: str, description: str | None = None) -> StepInstance:
    """Build a StepInstance from positional slot values (test/demo helper)."""
    slots = step_schema(kind)
    if len(values) != len(slots):
        raise ValueError(f"{kind} takes {len(slots)} argument(s), got {len(values)}")
    return StepInstance(kind=kind, args=dict(zip(slots, values)), description=description)
