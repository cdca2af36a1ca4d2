"""Verdict-producing operations shared by the HTTP service and the CLI.

Each operation takes domain objects and returns a plain JSON-able verdict
dict {"ok": ..., "details": {...}} with deterministic content; errors are
raised as the package's exception types and mapped by the caller.
"""
from __future__ import annotations

from typing import Any, Sequence

from . import documents, paths, symplin
from .errors import EngineMismatch, UnknownPredicate
from .symplin import CanRel
from .paths import ENGINES, Path

PREDICATES = (
    "lagrangian",
    "surjective",
    "cosurjective",
    "injective",
    "coinjective",
    "reduction",
    "coreduction",
)


def compose_op(engine_name: str, left, right) -> dict:
    """Composite of two morphisms, with the pair analysis for the linear engine."""
    engine = ENGINES[engine_name]
    analysis = engine.analyze(left, right)
    details: dict[str, Any] = {
        "composite": documents.morphism_document(engine_name, analysis.composite),
        "analysis": documents.analysis_body(analysis),
    }
    return {"ok": True, "details": details}


def check_op(engine_name: str, morphism, predicate: str) -> dict:
    """Evaluate one predicate; the verdict's ok field is the predicate value."""
    if predicate not in PREDICATES:
        raise UnknownPredicate(
            f"unknown predicate {predicate!r}; expected one of {', '.join(PREDICATES)}"
        )
    engine = ENGINES[engine_name]
    if predicate == "lagrangian":
        if engine_name != "symplin":
            raise UnknownPredicate("predicate 'lagrangian' only applies to the symplin engine")
        space = symplin.product_space(morphism.target, morphism.source.dual())
        value = symplin.is_lagrangian(space, morphism.graph)
        details: dict[str, Any] = {"predicate": predicate, "value": value}
    else:
        profile = engine.classify(morphism)
        value = profile.flags()[predicate]
        details = {
            "predicate": predicate,
            "value": value,
            "profile": documents.profile_body(profile),
        }
    return {"ok": value, "details": details}


def _require_symplin_word(engine_name: str, word: Sequence) -> list[CanRel]:
    if engine_name != "symplin":
        raise EngineMismatch(
            f"factorization needs the symplin engine, got {engine_name!r}"
        )
    return list(word)


def factorize_op(engine_name: str, word: Sequence, mode: str = "ww") -> dict:
    """Run the one-step or iterated factorization and fold in its replay report.

    Operates on the word exactly as written; identity entries are ordinary
    relations here, not removable padding.
    """
    word = _require_symplin_word(engine_name, word)
    if not word:
        raise EngineMismatch("factorization needs a word of length >= 1")
    if mode == "prop4":
        if len(word) != 1:
            raise EngineMismatch(
                f"mode 'prop4' factors a single relation, got a word of length {len(word)}"
            )
        fact = paths.factorize_single(word[0])
    elif mode == "ww":
        fact = paths.factorize_word(word)
    else:
        raise UnknownPredicate(f"unknown factorization mode {mode!r}")
    report = paths.verify_two_term(word, fact)
    details = {
        "factorization": documents.factorization_body(fact),
        "middle_dimension": fact.middle.dim,
        "verify": documents.report_body(report),
    }
    return {"ok": report.passed, "details": details}


def normalize_op(path: Path) -> dict:
    """Normal form plus collapse log; the fold must be unchanged and is reported."""
    normal, log = paths.normalize_trace(path)
    before = paths.total_composite(path)
    after = paths.total_composite(normal)
    matches = before == after
    details = {
        "path": {"path": documents.path_body(normal)},
        "collapse_log": documents.collapse_log_body(log),
        "composite_matches": matches,
        "composite": documents.morphism_document(path.engine.name, after),
    }
    return {"ok": matches, "details": details}


def verify_op(engine_name: str, word: Sequence, fact: paths.Factorization) -> dict:
    """Replay a factorization trace against a word and report per-step results."""
    word = _require_symplin_word(engine_name, word)
    report = paths.verify_two_term(word, fact)
    return {"ok": report.passed, "details": {"report": documents.report_body(report)}}
