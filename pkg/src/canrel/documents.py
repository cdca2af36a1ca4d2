"""Parsing and serialization of the JSON document formats.

A file holds one document, a JSON array of documents, or an object with a
"documents" key. Each document has exactly one kind key: finset, finrel,
space, canrel, path, or factorization. Bodies may carry a "name"; named
finsets, spaces, and morphisms can then be referenced by string anywhere a
body is expected within the same store.

Rationals travel as strings "p/q" (or "p" when the denominator is 1);
serialization is deterministic: canonical bases, sorted pairs, sorted keys.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from .errors import DocumentError
from .exact import Subspace, format_rational, rational
from .finrel import FinRelation, FinSet, RelationProfile
from .symplin import CanRel, PairAnalysis, SymplecticSpace
from .paths import (
    ENGINES,
    CollapseRecord,
    Factorization,
    FinPairAnalysis,
    Path,
    TraceStep,
    VerifyReport,
    make_path,
)

KINDS = ("finset", "finrel", "space", "canrel", "path", "factorization")


@dataclass(frozen=True)
class WordDocument:
    """A path document before minimal-form normalization.

    Factorization and trace replay act on the word exactly as written
    (identity entries included), so the raw word is kept alongside the
    minimal-form Path.
    """

    engine_name: str
    word: tuple
    object: Any = None

    @property
    def path(self) -> Path:
        return make_path(ENGINES[self.engine_name], list(self.word), obj=self.object)


@dataclass
class DocumentStore:
    """All documents of one input context, with name-based cross references."""

    finsets: dict[str, FinSet] = field(default_factory=dict)
    spaces: dict[str, SymplecticSpace] = field(default_factory=dict)
    morphisms: dict[str, tuple[str, Any]] = field(default_factory=dict)
    paths: dict[str, WordDocument] = field(default_factory=dict)
    factorizations: dict[str, Factorization] = field(default_factory=dict)
    morphism_order: list[tuple[str, Any]] = field(default_factory=list)
    path_order: list[WordDocument] = field(default_factory=list)
    factorization_order: list[Factorization] = field(default_factory=list)


def _expect(body: Any, kind: str) -> dict:
    if not isinstance(body, dict):
        raise DocumentError(f"{kind} body must be an object, got {type(body).__name__}")
    return body


def _str_list(value: Any, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise DocumentError(f"{what} must be a list of strings")
    return value


# ---------------------------------------------------------------------------
# Builders (JSON body -> domain value).
# ---------------------------------------------------------------------------


def build_finset(body: Any) -> FinSet:
    body = _expect(body, "finset")
    if "name" not in body or "elements" not in body:
        raise DocumentError("finset needs 'name' and 'elements'")
    if not isinstance(body["name"], str):
        raise DocumentError("finset name must be a string")
    return FinSet(body["name"], tuple(_str_list(body["elements"], "finset elements")))


def _resolve_finset(value: Any, store: DocumentStore | None) -> FinSet:
    if isinstance(value, str):
        if store is None or value not in store.finsets:
            raise DocumentError(f"unknown finset reference {value!r}")
        return store.finsets[value]
    return build_finset(value)


def build_space(body: Any) -> SymplecticSpace:
    body = _expect(body, "space")
    if "blocks" not in body:
        raise DocumentError("space needs 'blocks'")
    blocks = body["blocks"]
    if not isinstance(blocks, list):
        raise DocumentError("space blocks must be a list of [half_dim, sign] pairs")
    out = []
    for entry in blocks:
        if (
            not isinstance(entry, (list, tuple))
            or len(entry) != 2
            or not all(isinstance(x, int) for x in entry)
        ):
            raise DocumentError(f"bad block {entry!r}: expected [half_dim, sign]")
        out.append((entry[0], entry[1]))
    return SymplecticSpace(tuple(out))


def _resolve_space(value: Any, store: DocumentStore | None) -> SymplecticSpace:
    if isinstance(value, str):
        if store is None or value not in store.spaces:
            raise DocumentError(f"unknown space reference {value!r}")
        return store.spaces[value]
    return build_space(value)


def build_finrel(body: Any, store: DocumentStore | None = None) -> FinRelation:
    body = _expect(body, "finrel")
    for key in ("target", "source", "pairs"):
        if key not in body:
            raise DocumentError(f"finrel needs {key!r}")
    target = _resolve_finset(body["target"], store)
    source = _resolve_finset(body["source"], store)
    pairs = body["pairs"]
    if not isinstance(pairs, list):
        raise DocumentError("finrel pairs must be a list")
    out = set()
    for p in pairs:
        if not isinstance(p, (list, tuple)) or len(p) != 2 or not all(isinstance(x, str) for x in p):
            raise DocumentError(f"bad pair {p!r}: expected [target_label, source_label]")
        out.add((p[0], p[1]))
    return FinRelation(target, source, frozenset(out))


def build_canrel(body: Any, store: DocumentStore | None = None) -> CanRel:
    body = _expect(body, "canrel")
    for key in ("target", "source", "basis"):
        if key not in body:
            raise DocumentError(f"canrel needs {key!r}")
    target = _resolve_space(body["target"], store)
    source = _resolve_space(body["source"], store)
    basis = body["basis"]
    if not isinstance(basis, list) or not all(isinstance(row, list) for row in basis):
        raise DocumentError("canrel basis must be a list of rows")
    ambient = target.dim + source.dim
    rows = []
    for row in basis:
        if len(row) != ambient:
            raise DocumentError(
                f"basis row of length {len(row)}, ambient dimension is {ambient}"
            )
        try:
            rows.append([rational(x) for x in row])
        except (ValueError, TypeError) as exc:
            raise DocumentError(str(exc)) from exc
    return CanRel(target, source, Subspace.span(ambient, rows))


def _resolve_morphism(value: Any, engine_name: str, store: DocumentStore | None):
    if isinstance(value, str):
        if store is None or value not in store.morphisms:
            raise DocumentError(f"unknown morphism reference {value!r}")
        kind, morphism = store.morphisms[value]
        if kind != engine_name:
            raise DocumentError(
                f"morphism {value!r} belongs to engine {kind!r}, expected {engine_name!r}"
            )
        return morphism
    body = _expect(value, "morphism")
    # accept both wrapped documents and bare bodies
    if "finrel" in body or "canrel" in body:
        kind = "finrel" if "finrel" in body else "canrel"
        if kind != engine_name:
            raise DocumentError(f"{kind} entry in a {engine_name} context")
        body = body[kind]
    if engine_name == "finrel":
        return build_finrel(body, store)
    return build_canrel(body, store)


def build_word_document(body: Any, store: DocumentStore | None = None) -> WordDocument:
    body = _expect(body, "path")
    engine_name = body.get("engine")
    if engine_name not in ENGINES:
        raise DocumentError(f"path engine must be one of {sorted(ENGINES)}, got {engine_name!r}")
    word_body = body.get("word")
    if not isinstance(word_body, list):
        raise DocumentError("path needs a 'word' list")
    word = tuple(_resolve_morphism(entry, engine_name, store) for entry in word_body)
    obj = None
    if "object" in body and body["object"] is not None:
        if engine_name == "finrel":
            obj = _resolve_finset(body["object"], store)
        else:
            obj = _resolve_space(body["object"], store)
    doc = WordDocument(engine_name, word, obj)
    doc.path  # validate junctions eagerly
    return doc


def build_path(body: Any, store: DocumentStore | None = None) -> Path:
    return build_word_document(body, store).path


def build_trace_step(body: Any) -> TraceStep:
    body = _expect(body, "trace step")
    move = body.get("move")
    if move not in ("expand", "collapse"):
        raise DocumentError(f"trace move must be 'expand' or 'collapse', got {move!r}")
    index = body.get("index")
    if not isinstance(index, int) or index < 0:
        raise DocumentError(f"trace index must be a nonnegative integer, got {index!r}")
    defects = body.get("defects")
    if (
        not isinstance(defects, (list, tuple))
        or len(defects) != 2
        or not all(isinstance(d, int) for d in defects)
    ):
        raise DocumentError(f"trace defects must be a pair of integers, got {defects!r}")
    return TraceStep(move, index, (defects[0], defects[1]))


def build_factorization(body: Any, store: DocumentStore | None = None) -> Factorization:
    body = _expect(body, "factorization")
    for key in ("reduction", "coreduction", "middle"):
        if key not in body:
            raise DocumentError(f"factorization needs {key!r}")
    reduction = build_canrel(body["reduction"], store)
    coreduction = build_canrel(body["coreduction"], store)
    middle = _resolve_space(body["middle"], store)
    trace = tuple(build_trace_step(s) for s in body.get("trace", []))
    return Factorization(reduction, coreduction, middle, trace)


def _ingest(doc: Any, store: DocumentStore) -> tuple[str, Any]:
    doc = _expect(doc, "document")
    kinds = [k for k in KINDS if k in doc]
    if len(kinds) != 1:
        raise DocumentError(
            f"a document must have exactly one kind key among {KINDS}, got {sorted(doc)}"
        )
    kind = kinds[0]
    body = doc[kind]
    name = body.get("name") if isinstance(body, dict) else None
    if kind == "finset":
        value = build_finset(body)
        store.finsets[value.name] = value
    elif kind == "space":
        value = build_space(body)
        if name:
            store.spaces[name] = value
    elif kind == "finrel":
        value = build_finrel(body, store)
        store.morphism_order.append(("finrel", value))
        if name:
            store.morphisms[name] = ("finrel", value)
    elif kind == "canrel":
        # morphisms are indexed by engine name, which for canrel is "symplin"
        value = build_canrel(body, store)
        store.morphism_order.append(("symplin", value))
        if name:
            store.morphisms[name] = ("symplin", value)
    elif kind == "path":
        value = build_word_document(body, store)
        store.path_order.append(value)
        if name:
            store.paths[name] = value
    else:
        value = build_factorization(body, store)
        store.factorization_order.append(value)
        if name:
            store.factorizations[name] = value
    return kind, value


def parse_text(text: str, store: DocumentStore | None = None) -> DocumentStore:
    """Parse a document file into (or on top of) a store."""
    if store is None:
        store = DocumentStore()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if isinstance(data, dict) and "documents" in data:
        data = data["documents"]
    docs = data if isinstance(data, list) else [data]
    for doc in docs:
        _ingest(doc, store)
    return store


def parse_document(text: str) -> tuple[str, Any]:
    """Parse a single standalone document; returns (kind, value)."""
    store = DocumentStore()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return _ingest(data, store)


# ---------------------------------------------------------------------------
# Serializers (domain value -> JSON body / document).
# ---------------------------------------------------------------------------


def finset_body(s: FinSet) -> dict:
    return {"name": s.name, "elements": list(s.elements)}


def finrel_body(f: FinRelation) -> dict:
    return {
        "target": finset_body(f.target),
        "source": finset_body(f.source),
        "pairs": sorted([x, y] for x, y in f.pairs),
    }


def space_body(s: SymplecticSpace) -> dict:
    return {"blocks": [[h, sign] for h, sign in s.blocks]}


def basis_rows(sub: Subspace) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in sub.rows]


def canrel_body(f: CanRel) -> dict:
    return {
        "target": space_body(f.target),
        "source": space_body(f.source),
        "basis": basis_rows(f.graph),
    }


def morphism_document(engine_name: str, f) -> dict:
    if engine_name == "finrel":
        return {"finrel": finrel_body(f)}
    return {"canrel": canrel_body(f)}


def path_body(p: Path) -> dict:
    name = p.engine.name
    body: dict[str, Any] = {
        "engine": name,
        "word": [
            finrel_body(f) if name == "finrel" else canrel_body(f) for f in p.word
        ],
    }
    if not p.word:
        body["object"] = finset_body(p.target) if name == "finrel" else space_body(p.target)
    return body


def trace_body(trace: Iterable[TraceStep]) -> list[dict]:
    return [
        {"move": s.move, "index": s.index, "defects": [s.defects[0], s.defects[1]]}
        for s in trace
    ]


def factorization_body(fact: Factorization) -> dict:
    return {
        "engine": "symplin",
        "reduction": canrel_body(fact.reduction_part),
        "coreduction": canrel_body(fact.coreduction_part),
        "middle": space_body(fact.middle),
        "trace": trace_body(fact.trace),
    }


def profile_body(profile: RelationProfile) -> dict:
    return profile.flags()


def analysis_body(analysis: PairAnalysis | FinPairAnalysis) -> dict:
    if isinstance(analysis, PairAnalysis):
        return {
            "transversal": analysis.transversal,
            "monic": analysis.monic,
            "strongly_transversal": analysis.strongly_transversal,
            "transversality_defect": analysis.transversality_defect,
            "monicity_defect": analysis.monicity_defect,
            "fiber_product_dim": analysis.fiber_product.dim,
        }
    return {
        "monic": analysis.monic,
        "strongly_transversal": analysis.strongly_transversal,
        "witness_conflicts": [
            {"pair": list(xz), "witnesses": n} for xz, n in analysis.conflicts
        ],
    }


def collapse_log_body(log: Iterable[CollapseRecord]) -> list[dict]:
    return [
        {"index": rec.index, "defects": [rec.defects[0], rec.defects[1]]} for rec in log
    ]


def report_body(report: VerifyReport) -> dict:
    return {
        "passed": report.passed,
        "steps": [
            {"name": e.name, "ok": e.ok, "detail": e.detail} for e in report.steps
        ],
        "checks": [
            {"name": e.name, "ok": e.ok, "detail": e.detail} for e in report.checks
        ],
    }


def dumps(value: Any, pretty: bool = False) -> str:
    """Deterministic JSON: sorted keys, stable separators."""
    if pretty:
        return json.dumps(value, sort_keys=True, indent=2)
    return json.dumps(value, sort_keys=True, separators=(",", ":"))
