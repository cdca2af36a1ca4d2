"""Finite sets and relations between them.

A relation with target X and source Y is a set of (x, y) pairs; it is read
as a morphism to X from Y. This module doubles as the brute-force model
for every predicate the linear engine implements: each flag below is a
direct quantifier over the pair set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable

from .errors import CompositionMismatch, InvariantViolation


@dataclass(frozen=True, eq=False)
class FinSet:
    """A named finite set. Label order matters only for serialization."""

    name: str
    elements: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise InvariantViolation(f"duplicate labels in finite set {self.name!r}")

    @property
    def labels(self) -> FrozenSet[str]:
        return frozenset(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinSet):
            return NotImplemented
        return self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class RelationProfile:
    """The four definitional flags of a relation, with their two derived classes."""

    surjective: bool
    cosurjective: bool
    injective: bool
    coinjective: bool

    @property
    def reduction(self) -> bool:
        return self.surjective and self.coinjective

    @property
    def coreduction(self) -> bool:
        return self.injective and self.cosurjective

    def flags(self) -> dict[str, bool]:
        return {
            "surjective": self.surjective,
            "cosurjective": self.cosurjective,
            "injective": self.injective,
            "coinjective": self.coinjective,
            "reduction": self.reduction,
            "coreduction": self.coreduction,
        }


@dataclass(frozen=True)
class FinRelation:
    """A relation target <- source, stored as an explicit pair set."""

    target: FinSet
    source: FinSet
    pairs: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(tuple(p) for p in self.pairs))
        tl, sl = self.target.labels, self.source.labels
        for x, y in self.pairs:
            if x not in tl or y not in sl:
                raise InvariantViolation(f"pair ({x!r}, {y!r}) escapes target/source")

    @property
    def range(self) -> FrozenSet[str]:
        return frozenset(x for x, _ in self.pairs)

    @property
    def domain(self) -> FrozenSet[str]:
        return frozenset(y for _, y in self.pairs)

    def is_identity(self) -> bool:
        return self.target == self.source and self.pairs == frozenset(
            (x, x) for x in self.target.elements
        )


def identity(s: FinSet) -> FinRelation:
    return FinRelation(s, s, frozenset((x, x) for x in s.elements))


def compose(f: FinRelation, g: FinRelation) -> FinRelation:
    """Set-theoretic composite: pairs (x, z) with a witness y in between."""
    if f.source != g.target:
        raise CompositionMismatch(
            f"source {sorted(f.source.labels)} does not match target {sorted(g.target.labels)}"
        )
    by_witness: dict[str, list[str]] = {}
    for y, z in g.pairs:
        by_witness.setdefault(y, []).append(z)
    pairs = frozenset(
        (x, z) for x, y in f.pairs for z in by_witness.get(y, ())
    )
    return FinRelation(f.target, g.source, pairs)


def transpose(f: FinRelation) -> FinRelation:
    return FinRelation(f.source, f.target, frozenset((y, x) for x, y in f.pairs))


def image(f: FinRelation, subset: Iterable[str]) -> FrozenSet[str]:
    """{x : (x, y) in f for some y in subset}."""
    sub = frozenset(subset)
    unknown = sub - f.source.labels
    if unknown:
        raise InvariantViolation(f"labels {sorted(unknown)} are not in the source")
    return frozenset(x for x, y in f.pairs if y in sub)


def classify(f: FinRelation) -> RelationProfile:
    per_target: dict[str, int] = {}
    per_source: dict[str, int] = {}
    for x, y in f.pairs:
        per_target[x] = per_target.get(x, 0) + 1
        per_source[y] = per_source.get(y, 0) + 1
    return RelationProfile(
        surjective=f.range == f.target.labels,
        cosurjective=f.domain == f.source.labels,
        injective=all(n <= 1 for n in per_target.values()),
        coinjective=all(n <= 1 for n in per_source.values()),
    )


def fiber_product(f: FinRelation, g: FinRelation) -> frozenset[tuple[str, str, str]]:
    """All (x, y, z) with (x, y) in f and (y, z) in g."""
    if f.source != g.target:
        raise CompositionMismatch("fiber product of non-composable relations")
    by_witness: dict[str, list[str]] = {}
    for y, z in g.pairs:
        by_witness.setdefault(y, []).append(z)
    return frozenset(
        (x, y, z) for x, y in f.pairs for z in by_witness.get(y, ())
    )


def monic_pair(f: FinRelation, g: FinRelation) -> bool:
    """True iff projecting the fiber product onto (x, z) loses nothing."""
    triples = fiber_product(f, g)
    return len(triples) == len({(x, z) for x, _, z in triples})


def witness_conflicts(f: FinRelation, g: FinRelation) -> dict[tuple[str, str], int]:
    """Witness counts for the composite pairs that have more than one."""
    counts: dict[tuple[str, str], int] = {}
    for x, _, z in fiber_product(f, g):
        counts[(x, z)] = counts.get((x, z), 0) + 1
    return {xz: n for xz, n in counts.items() if n > 1}
