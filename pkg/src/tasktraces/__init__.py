"""Toolkit for collecting, screening, and modeling household task traces."""

from .alignment import AlignCosts, Alignment, align, diff_complete
from .categories import CATEGORIES, CATEGORY_SLUGS, TaskCategory
from .dataset import (
    Dataset,
    SchemaError,
    ScreenResult,
    StatsSummary,
    dataset_stats,
    load_dataset,
    parse_trace,
    screen_dataset,
    serialize_trace,
)
from .hmm import Hmm, ObservedStep, forward_likelihood, viterbi
from .loops import detect_loops, suggest_foreach
from .markov import (
    ABSTRACTION_KIND,
    ABSTRACTION_KIND_ARGS,
    END,
    START,
    MarkovModel,
    StateKey,
    build_markov,
    detect_branches,
    model_from_json,
    model_to_json,
    sequence_log_prob,
    suggest_next,
)
from .steps import (
    PARAM_SLOTS,
    STEP_KINDS,
    STEP_SCHEMAS,
    StepInstance,
    canonicalize,
    make_step,
    step_schema,
)
from .suggest import SuggestConfig, suggest_edits
from .suggestions import Suggestion
from .trace import Trace, ValidationReport, validate_trace

__all__ = [
    "ABSTRACTION_KIND",
    "ABSTRACTION_KIND_ARGS",
    "AlignCosts",
    "Alignment",
    "CATEGORIES",
    "CATEGORY_SLUGS",
    "Dataset",
    "END",
    "Hmm",
    "MarkovModel",
    "ObservedStep",
    "PARAM_SLOTS",
    "START",
    "STEP_KINDS",
    "STEP_SCHEMAS",
    "SchemaError",
    "ScreenResult",
    "StateKey",
    "StatsSummary",
    "StepInstance",
    "SuggestConfig",
    "Suggestion",
    "TaskCategory",
    "Trace",
    "ValidationReport",
    "align",
    "build_markov",
    "canonicalize",
    "dataset_stats",
    "detect_branches",
    "detect_loops",
    "diff_complete",
    "forward_likelihood",
    "load_dataset",
    "make_step",
    "model_from_json",
    "model_to_json",
    "parse_trace",
    "screen_dataset",
    "sequence_log_prob",
    "serialize_trace",
    "step_schema",
    "suggest_edits",
    "suggest_foreach",
    "suggest_next",
    "validate_trace",
    "viterbi",
]
