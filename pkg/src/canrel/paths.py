"""Composable words of relations, their collapse quotient, and the
two-term reduction/coreduction factorization.

A Path is a finite composable word kept in minimal form (no identity
entries). Adjacent entries may be collapsed into their composite exactly
when the pair is strongly transversal for the owning engine; folding the
whole word with plain composition is invariant under such collapses.
factorize_word turns any composable word of linear canonical relations into
a single reduction followed by a single coreduction, recording every
rewrite move it performed so the result can be replayed and checked.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import finrel, symplin
from .errors import (
    CollapseRefused,
    CompositionMismatch,
    EngineMismatch,
    InvariantViolation,
)
from .finrel import FinRelation, RelationProfile
from .symplin import CanRel, PairAnalysis, SymplecticSpace


# ---------------------------------------------------------------------------
# Engines: the two instantiations of the relation interface.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FinPairAnalysis:
    """Collapse evidence for finite relations: monicity is the whole story."""

    monic: bool
    strongly_transversal: bool
    conflicts: tuple[tuple[tuple[str, str], int], ...]
    composite: FinRelation

    @property
    def defects(self) -> tuple[int, int]:
        # No transversality condition has finite content; report the number
        # of over-witnessed composite pairs as the monicity defect.
        return (0, len(self.conflicts))


class FinRelEngine:
    """REL: finite sets and relations. Strong transversality reduces to monicity."""

    name = "finrel"
    supports_factorization = False

    @staticmethod
    def target(f: FinRelation):
        return f.target

    @staticmethod
    def source(f: FinRelation):
        return f.source

    @staticmethod
    def identity(obj) -> FinRelation:
        return finrel.identity(obj)

    @staticmethod
    def is_identity(f: FinRelation) -> bool:
        return f.is_identity()

    @staticmethod
    def compose(f: FinRelation, g: FinRelation) -> FinRelation:
        return finrel.compose(f, g)

    @staticmethod
    def transpose(f: FinRelation) -> FinRelation:
        return finrel.transpose(f)

    @staticmethod
    def classify(f: FinRelation) -> RelationProfile:
        return finrel.classify(f)

    @staticmethod
    def analyze(f: FinRelation, g: FinRelation) -> FinPairAnalysis:
        conflicts = tuple(sorted(finrel.witness_conflicts(f, g).items()))
        return FinPairAnalysis(
            monic=not conflicts,
            strongly_transversal=not conflicts,
            conflicts=conflicts,
            composite=finrel.compose(f, g),
        )


class SymplinEngine:
    """The linear symplectic category of canonical relations."""

    name = "symplin"
    supports_factorization = True

    @staticmethod
    def target(f: CanRel):
        return f.target

    @staticmethod
    def source(f: CanRel):
        return f.source

    @staticmethod
    def identity(obj) -> CanRel:
        return symplin.identity(obj)

    @staticmethod
    def is_identity(f: CanRel) -> bool:
        return f.is_identity()

    @staticmethod
    def compose(f: CanRel, g: CanRel) -> CanRel:
        return symplin.compose(f, g)

    @staticmethod
    def transpose(f: CanRel) -> CanRel:
        return symplin.transpose(f)

    @staticmethod
    def classify(f: CanRel) -> RelationProfile:
        return symplin.classify(f)

    @staticmethod
    def analyze(f: CanRel, g: CanRel) -> PairAnalysis:
        return symplin.analyze_pair(f, g)


FINREL = FinRelEngine()
SYMPLIN = SymplinEngine()
ENGINES = {FINREL.name: FINREL, SYMPLIN.name: SYMPLIN}


# ---------------------------------------------------------------------------
# Paths.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Path:
    """A composable word in minimal form: identities never appear.

    The empty word is the identity path on ``target`` (= ``source``).
    """

    engine: object
    target: object
    source: object
    word: tuple = ()

    def __len__(self) -> int:
        return len(self.word)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Path):
            return NotImplemented
        return (
            self.engine.name == other.engine.name
            and self.target == other.target
            and self.source == other.source
            and self.word == other.word
        )

    def __hash__(self) -> int:
        return hash((self.engine.name, self.target, self.source, self.word))


def make_path(engine, word: Sequence, obj=None) -> Path:
    """Build a path from a word, stripping identities and validating junctions.

    An empty (or all-identity) word needs ``obj`` — or at least one entry
    to borrow endpoints from — to know which identity path it denotes.
    """
    word = list(word)
    for i in range(len(word) - 1):
        if engine.source(word[i]) != engine.target(word[i + 1]):
            raise CompositionMismatch(
                f"entries {i} and {i + 1} do not compose", index=i + 1
            )
    minimal = [f for f in word if not engine.is_identity(f)]
    if minimal:
        return Path(engine, engine.target(minimal[0]), engine.source(minimal[-1]), tuple(minimal))
    if word:
        obj = engine.target(word[0])
    if obj is None:
        raise InvariantViolation("an empty path needs an explicit object")
    return Path(engine, obj, obj, ())


def compose_paths(p: Path, q: Path) -> Path:
    if p.engine.name != q.engine.name:
        raise EngineMismatch(f"cannot compose {p.engine.name} path with {q.engine.name} path")
    if p.source != q.target:
        raise CompositionMismatch("path source does not match path target")
    if not p.word:
        return q
    if not q.word:
        return p
    return Path(p.engine, p.target, q.source, p.word + q.word)


def transpose_path(p: Path) -> Path:
    word = tuple(p.engine.transpose(f) for f in reversed(p.word))
    return Path(p.engine, p.source, p.target, word)


def embed(engine, f) -> Path:
    """Cross-section of the fold: a singleton word (empty for identities)."""
    return make_path(engine, [f])


def total_composite(p: Path):
    """Fold the word with plain composition; the empty word is the identity."""
    if not p.word:
        return p.engine.identity(p.target)
    acc = p.word[0]
    for f in p.word[1:]:
        acc = p.engine.compose(acc, f)
    return acc


def collapse_at(p: Path, i: int) -> Path:
    """Replace entries i, i+1 by their composite; refused unless the pair
    is strongly transversal, with the analysis attached to the refusal."""
    if not 0 <= i < len(p.word) - 1:
        raise IndexError(f"collapse index {i} out of range for word of length {len(p.word)}")
    analysis = p.engine.analyze(p.word[i], p.word[i + 1])
    if not analysis.strongly_transversal:
        raise CollapseRefused(
            f"pair at index {i} is not strongly transversal (defects {analysis.defects})",
            evidence=analysis,
        )
    new_word = list(p.word[:i]) + [analysis.composite] + list(p.word[i + 2:])
    return make_path(p.engine, new_word, obj=p.target)


@dataclass(frozen=True)
class CollapseRecord:
    index: int
    defects: tuple[int, int]


def normalize_trace(p: Path) -> tuple[Path, tuple[CollapseRecord, ...]]:
    """Greedy leftmost collapsing with its log.

    Equal normal forms certify equality in the collapse quotient; the
    converse is not decided here (confluence of the rewrite is open).
    """
    log: list[CollapseRecord] = []
    current = p
    while True:
        for i in range(len(current.word) - 1):
            analysis = current.engine.analyze(current.word[i], current.word[i + 1])
            if analysis.strongly_transversal:
                word = list(current.word[:i]) + [analysis.composite] + list(current.word[i + 2:])
                current = make_path(current.engine, word, obj=current.target)
                log.append(CollapseRecord(i, analysis.defects))
                break
        else:
            return current, tuple(log)


def normalize(p: Path) -> Path:
    return normalize_trace(p)[0]


# ---------------------------------------------------------------------------
# The two-term factorization.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    """One rewrite move on the working word.

    ``expand`` replaces entry ``index`` by its canonical reduction/
    coreduction pair; ``collapse`` composes entries ``index`` and
    ``index + 1``. Both are deterministic, so a trace can be replayed
    from the input word alone.
    """

    move: str
    index: int
    defects: tuple[int, int]


@dataclass(frozen=True)
class Factorization:
    reduction_part: CanRel
    coreduction_part: CanRel
    middle: SymplecticSpace
    trace: tuple[TraceStep, ...] = field(default_factory=tuple)


def _canonical_parts(f: CanRel) -> tuple[CanRel, CanRel]:
    """The reduction/coreduction pieces of the canonical one-step factorization:
    (1 x diagonal_reduction) through target x dual(source) x source, then (graph_coreduction x 1)."""
    left = symplin.product(symplin.identity(f.target), symplin.diagonal_reduction(f.source))
    right = symplin.product(symplin.graph_coreduction(f), symplin.identity(f.source))
    return left, right


def factorize_single(f: CanRel) -> Factorization:
    """Factor a single relation through target x dual(source) x source."""
    left, right = _canonical_parts(f)
    analysis = symplin.analyze_pair(left, right)
    if not analysis.strongly_transversal or analysis.composite != f:
        raise InvariantViolation(
            "canonical factorization failed its own check; this is a bug"
        )
    if not symplin.classify(left).reduction or not symplin.classify(right).coreduction:
        raise InvariantViolation("canonical factors misclassified; this is a bug")
    return Factorization(
        reduction_part=left,
        coreduction_part=right,
        middle=left.source,
        trace=(TraceStep("expand", 0, analysis.defects),),
    )


def _checked_collapse(work: list[CanRel], idx: int, trace: list[TraceStep]) -> None:
    analysis = symplin.analyze_pair(work[idx], work[idx + 1])
    if not analysis.strongly_transversal:
        raise InvariantViolation(
            f"collapse at {idx} not strongly transversal (defects {analysis.defects}); "
            "every junction in this construction is decorated, so this is a bug"
        )
    work[idx:idx + 2] = [analysis.composite]
    trace.append(TraceStep("collapse", idx, analysis.defects))


def factorize_word(word: Sequence[CanRel]) -> Factorization:
    """Iterated triangle construction on a composable word.

    Each level expands every active entry into its canonical pair and
    collapses the coreduction/reduction junctions in between, leaving one
    more reduction on the left frame and one more coreduction on the
    right. The frames are then folded into single relations A and B. Every
    move is verified strongly transversal as it happens and appended to
    the trace.
    """
    word = list(word)
    if not word:
        raise CompositionMismatch("factorization needs a nonempty word")
    for i in range(len(word) - 1):
        if word[i].source != word[i + 1].target:
            raise CompositionMismatch(f"entries {i} and {i + 1} do not compose", index=i + 1)

    r = len(word)
    work = word
    trace: list[TraceStep] = []
    depth = 0
    while True:
        seg_len = len(work) - 2 * depth
        if seg_len == 0:
            break
        for offset in range(seg_len):
            idx = depth + 2 * offset
            left, right = _canonical_parts(work[idx])
            analysis = symplin.analyze_pair(left, right)
            if not analysis.strongly_transversal or analysis.composite != work[idx]:
                raise InvariantViolation(
                    f"expansion at {idx} failed its check; this is a bug"
                )
            work[idx:idx + 1] = [left, right]
            trace.append(TraceStep("expand", idx, analysis.defects))
        for i in range(seg_len - 1):
            _checked_collapse(work, depth + 1 + i, trace)
        depth += 1

    # work is now r reductions followed by r coreductions; fold each side.
    for _ in range(r - 1):
        _checked_collapse(work, 0, trace)
    for _ in range(r - 1):
        _checked_collapse(work, 1, trace)

    reduction_part, coreduction_part = work
    if not symplin.classify(reduction_part).reduction:
        raise InvariantViolation("left accumulator is not a reduction; this is a bug")
    if not symplin.classify(coreduction_part).coreduction:
        raise InvariantViolation("right accumulator is not a coreduction; this is a bug")
    return Factorization(
        reduction_part=reduction_part,
        coreduction_part=coreduction_part,
        middle=reduction_part.source,
        trace=tuple(trace),
    )


# ---------------------------------------------------------------------------
# Replay verification.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReportEntry:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class VerifyReport:
    steps: tuple[ReportEntry, ...]
    checks: tuple[ReportEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.steps) and all(e.ok for e in self.checks)

    def entries(self) -> tuple[ReportEntry, ...]:
        return self.steps + self.checks


def verify_two_term(word: Sequence[CanRel], fact: Factorization) -> VerifyReport:
    """Replay the factorization trace from the input word and re-check everything.

    Expansions are recomputed (the canonical pair is a function of the
    entry), collapses re-analyzed; the replayed end state must be exactly
    [A, B], A must classify as a reduction, B as a coreduction, and the
    plain fold of the word must equal their composite.
    """
    steps: list[ReportEntry] = []
    work = list(word)
    replay_ok = True
    for n, step in enumerate(fact.trace):
        label = f"step {n}: {step.move} at {step.index}"
        if step.move == "expand":
            if not 0 <= step.index < len(work):
                steps.append(ReportEntry(label, False, "index out of range"))
                replay_ok = False
                break
            entry = work[step.index]
            left, right = _canonical_parts(entry)
            analysis = symplin.analyze_pair(left, right)
            ok = (
                analysis.strongly_transversal
                and analysis.composite == entry
                and analysis.defects == step.defects
            )
            work[step.index:step.index + 1] = [left, right]
            steps.append(ReportEntry(label, ok, f"defects {analysis.defects}"))
        elif step.move == "collapse":
            if not 0 <= step.index < len(work) - 1:
                steps.append(ReportEntry(label, False, "index out of range"))
                replay_ok = False
                break
            analysis = symplin.analyze_pair(work[step.index], work[step.index + 1])
            ok = analysis.strongly_transversal and analysis.defects == step.defects
            work[step.index:step.index + 2] = [analysis.composite]
            steps.append(ReportEntry(label, ok, f"defects {analysis.defects}"))
        else:
            steps.append(ReportEntry(label, False, f"unknown move {step.move!r}"))
            replay_ok = False
            break
        if not steps[-1].ok:
            replay_ok = False

    checks: list[ReportEntry] = []
    end_matches = replay_ok and work == [fact.reduction_part, fact.coreduction_part]
    checks.append(ReportEntry(
        "replayed word equals [A, B]", end_matches,
        f"replayed length {len(work)}",
    ))
    profile_a = symplin.classify(fact.reduction_part)
    profile_b = symplin.classify(fact.coreduction_part)
    checks.append(ReportEntry("A is a reduction", profile_a.reduction))
    checks.append(ReportEntry("B is a coreduction", profile_b.coreduction))
    checks.append(ReportEntry(
        "middle space agrees",
        fact.reduction_part.source == fact.middle == fact.coreduction_part.target,
    ))
    if word:
        folded = word[0]
        for f in word[1:]:
            folded = symplin.compose(folded, f)
        recomposed = symplin.compose(fact.reduction_part, fact.coreduction_part)
        checks.append(ReportEntry("fold of word equals A o B", recomposed == folded))
    else:
        checks.append(ReportEntry("fold of word equals A o B", False, "empty word"))
    return VerifyReport(tuple(steps), tuple(checks))
