"""Exact generalized quadratic forms over real quadratic fields.

Forms and elements use the same text syntax as the command line tool, e.g.
``"z1^2 + z2*t(z2)"`` and ``"3/2+1/2s"`` (``s`` is sqrt(D)). Structured
results are returned as the dictionaries the CLI prints under ``"result"``.
"""

import json

from ._core import (
    BudgetExhausted,
    ContractFailure,
    Error,
    FieldContext,
    FieldElement,
    ParseError,
    PreconditionError,
    classify,
    decompose,
    indecomposables,
    run,
)
from . import _core

__all__ = [
    "BudgetExhausted",
    "ContractFailure",
    "Error",
    "FieldContext",
    "FieldElement",
    "ParseError",
    "PreconditionError",
    "classify",
    "counterexample",
    "decompose",
    "delta",
    "indecomposables",
    "represent",
    "run",
    "theorem",
    "universality",
]


def delta(d, form):
    """Lower-bound certificate for a totally positive definite form."""
    return json.loads(_core._delta(d, form))


def represent(d, form, target, height=None, parallel=1):
    """Decide whether ``form`` represents ``target``.

    Without ``height`` the form must be definite and the answer is complete.
    With ``height`` the search covers basis coordinates in [-height, height].
    """
    return json.loads(_core._represent(d, form, target, height, parallel))


def universality(d, form, trace_bound, height=None, parallel=1):
    return json.loads(_core._universality(d, form, trace_bound, height, parallel))


def counterexample(trace_bound=100, parallel=1):
    return json.loads(_core._counterexample(trace_bound, parallel))


def theorem(d, form, trace_bound, parallel=1):
    return json.loads(_core._theorem(d, form, trace_bound, parallel))
