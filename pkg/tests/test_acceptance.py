"""Acceptance criteria, one test per criterion.

Every criterion prints a PASS line with its observed scale when it
succeeds; scales and tolerances are pinned here, not configurable. All
equality checks are exact (canonical forms), never approximate.
"""
from __future__ import annotations

import random
import time
from itertools import product as iproduct

import oracles
from canrel import finrel, symplin
from canrel.finrel import FinSet
from canrel.sampling import (
    random_canrel,
    random_fin_word,
    random_space,
    random_word,
)
from canrel.symplin import SymplecticSpace, analyze_pair, classify, compose
from canrel.paths import FINREL, SYMPLIN, factorize_single, factorize_word, total_composite, make_path, normalize_trace


def _report(line: str) -> None:
    print(f"\nACCEPTANCE {line}")


def test_criterion_1_theorem_reproduction():
    """>= 100 randomized words, r in 1..4: A reduction, B coreduction,
    A o B equals the fold exactly, every trace step defect-free; < 60 s."""
    rng = random.Random(101)
    t0 = time.time()
    total = 0
    for i in range(100):
        r = 1 + i % 4
        word = random_word(rng, r, max_half_dim=2, shears=1, max_num=5, max_den=5)
        fact = factorize_word(word)
        assert classify(fact.reduction_part).reduction
        assert classify(fact.coreduction_part).coreduction
        folded = word[0]
        for f in word[1:]:
            folded = compose(folded, f)
        assert compose(fact.reduction_part, fact.coreduction_part) == folded
        assert all(step.defects == (0, 0) for step in fact.trace)
        total += 1
    elapsed = time.time() - t0
    assert total == 100
    assert elapsed < 60.0, f"runtime {elapsed:.1f}s exceeds the 60s budget"
    _report(f"criterion 1 PASS: theorem reproduced on {total} words in {elapsed:.1f}s")


def test_criterion_2_one_step_reproduction():
    """>= 200 randomized single relations: strongly transversal, exact
    round trip, middle dimension dim X + 2 dim Y. Zero failures."""
    rng = random.Random(102)
    for _ in range(200):
        x = random_space(rng, allow_point=True)
        y = random_space(rng, allow_point=True)
        f = random_canrel(rng, x, y, shears=rng.randint(0, 2))
        fact = factorize_single(f)
        analysis = analyze_pair(fact.reduction_part, fact.coreduction_part)
        assert analysis.strongly_transversal
        assert analysis.composite == f
        assert fact.middle.dim == x.dim + 2 * y.dim
    _report("criterion 2 PASS: one-step factorization round-tripped on 200 relations")


def test_criterion_3_exponential_middle_dimension():
    """Equal-dimension chains, d in {2, 4}, r in 1..4: apex dimension equals
    the iterated recurrence d' = d_prev + 2 d_cur, i.e. 3^r * d. Exact."""
    rng = random.Random(103)
    blocks_by_dim = {2: ((1, 1),), 4: ((2, 1),)}
    results = []
    for d, blocks in blocks_by_dim.items():
        for r in range(1, 5):
            spaces = [SymplecticSpace(blocks) for _ in range(r + 1)]
            word = random_word(rng, r, spaces=spaces)
            fact = factorize_word(word)
            expected = oracles.middle_dimension_recurrence([d] * (r + 1))
            assert expected == 3**r * d
            assert fact.middle.dim == expected
            results.append((d, r, fact.middle.dim))
    _report(f"criterion 3 PASS: apex dimensions {results}")


def test_criterion_4_defect_duality():
    """>= 500 randomized lagrangian pairs: the transversality and monicity
    defects agree, and monic implies transversal. Zero counterexamples."""
    rng = random.Random(104)
    nonzero = 0
    for _ in range(500):
        a, b, c = (random_space(rng, allow_point=True) for _ in range(3))
        f = random_canrel(rng, a, b, shears=rng.randint(0, 2))
        g = random_canrel(rng, b, c, shears=rng.randint(0, 2))
        pa = analyze_pair(f, g)
        assert pa.transversality_defect == pa.monicity_defect
        if pa.monic:
            assert pa.transversal
        nonzero += pa.transversality_defect > 0
    assert nonzero > 0, "sampler produced no degenerate pairs; duality untested"
    _report(f"criterion 4 PASS: defect duality on 500 pairs ({nonzero} degenerate)")


def _sized_sets(max_size: int) -> list[FinSet]:
    return [
        FinSet(f"S{n}", tuple(f"s{n}_{i}" for i in range(n))) for n in range(max_size + 1)
    ]


def test_criterion_5_finite_oracle_equivalence():
    """classify/monic/compose agree with direct quantifier enumeration:
    exhaustively over all relations with |X|,|Y| <= 3, and over all
    composable pairs and triples with sizes <= 2. < 30 s."""
    t0 = time.time()
    relations_checked = 0
    for tgt in _sized_sets(3):
        for src in _sized_sets(3):
            for f in oracles.all_relations(tgt, src):
                assert finrel.classify(f).flags() == oracles.fin_classify(f)
                relations_checked += 1

    pairs_checked = 0
    sets2 = _sized_sets(2)
    for a, b, c in iproduct(sets2, sets2, sets2):
        rels_ab = list(oracles.all_relations(a, b))
        rels_bc = list(oracles.all_relations(b, c))
        for f in rels_ab:
            for g in rels_bc:
                assert finrel.compose(f, g).pairs == oracles.fin_compose(f, g)
                assert finrel.monic_pair(f, g) == oracles.fin_monic(f, g)
                pairs_checked += 1

    triples_checked = 0
    small = _sized_sets(2)[1:]  # skip the empty set to keep the count meaningful
    for a, b, c, d in iproduct(small, small, small, small):
        rels = (
            list(oracles.all_relations(a, b)),
            list(oracles.all_relations(b, c)),
            list(oracles.all_relations(c, d)),
        )
        for f in rels[0]:
            for g in rels[1]:
                fg = finrel.compose(f, g)
                for h in rels[2]:
                    assert finrel.compose(fg, h) == finrel.compose(f, finrel.compose(g, h))
                    triples_checked += 1
    elapsed = time.time() - t0
    assert elapsed < 30.0, f"runtime {elapsed:.1f}s exceeds the 30s budget"
    _report(
        "criterion 5 PASS: "
        f"{relations_checked} relations, {pairs_checked} pairs, "
        f"{triples_checked} triples against oracles in {elapsed:.1f}s"
    )


def test_criterion_6_rewrite_soundness():
    """>= 200 randomized paths in both engines: the fold is invariant under
    normalization, every collapse was certified, and decorated junctions
    are always collapsible."""
    rng = random.Random(106)
    decorated_hits = 0
    collapses = 0
    for i in range(200):
        if i % 2 == 0:
            engine = FINREL
            word = random_fin_word(rng, rng.randint(1, 5))
        else:
            engine = SYMPLIN
            word = random_word(rng, rng.randint(1, 4), shears=rng.randint(0, 1))
        path = make_path(engine, word)
        normal, log = normalize_trace(path)
        assert total_composite(normal) == total_composite(path)
        for record in log:
            assert record.defects == (0, 0)
            collapses += 1
        for f, g in zip(word, word[1:]):
            pf, pg = engine.classify(f), engine.classify(g)
            if pf.coreduction or pg.reduction:
                assert engine.analyze(f, g).strongly_transversal
                decorated_hits += 1
    assert decorated_hits > 0 and collapses > 0
    _report(
        "criterion 6 PASS: 200 paths normalized "
        f"({collapses} certified collapses, {decorated_hits} decorated junctions)"
    )


def test_criterion_7_transpose_structure():
    """Involutivity, contravariance, and reduction/coreduction exchange:
    exhaustive on the small finite universe, randomized on 100 linear fixtures."""
    for tgt in _sized_sets(2):
        for src in _sized_sets(2):
            for f in oracles.all_relations(tgt, src):
                assert finrel.transpose(finrel.transpose(f)) == f
                p, pt = finrel.classify(f), finrel.classify(finrel.transpose(f))
                assert p.reduction == pt.coreduction
                assert p.coreduction == pt.reduction
    sets2 = _sized_sets(2)
    for a, b, c in iproduct(sets2, sets2, sets2):
        for f in oracles.all_relations(a, b):
            for g in oracles.all_relations(b, c):
                assert finrel.transpose(finrel.compose(f, g)) == finrel.compose(
                    finrel.transpose(g), finrel.transpose(f)
                )

    rng = random.Random(107)
    for _ in range(100):
        a, b, c = (random_space(rng) for _ in range(3))
        f = random_canrel(rng, a, b, shears=rng.randint(0, 2))
        g = random_canrel(rng, b, c, shears=rng.randint(0, 2))
        assert symplin.transpose(symplin.transpose(f)) == f
        assert symplin.transpose(compose(f, g)) == compose(
            symplin.transpose(g), symplin.transpose(f)
        )
        p, pt = classify(f), classify(symplin.transpose(f))
        assert p.reduction == pt.coreduction
        assert p.coreduction == pt.reduction
    _report("criterion 7 PASS: transpose structure exhaustive + 100 linear fixtures")
