"""Proofs for description logic entailments."""

import json

from ._core import (
    Axiom,
    Cancelled,
    Error,
    NoProof,
    Ontology,
    ParseError,
    PreconditionViolation,
    ResourceLimit,
    methods,
)

__all__ = [
    "Axiom",
    "Cancelled",
    "Error",
    "NoProof",
    "Ontology",
    "ParseError",
    "PreconditionViolation",
    "ResourceLimit",
    "explain",
    "methods",
]


def explain(ontology, goal, method="elim-heur", known=(), measure=None):
    """Proof of `goal` as a dict in the proof JSON schema, plus warnings."""
    text, warnings = ontology.explain(goal, method, list(known), measure)
    return json.loads(text), warnings
