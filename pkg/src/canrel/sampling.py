"""Seeded random generators for spaces, lagrangians, relations, and words.

Lagrangian subspaces are drawn by shearing a random coordinate lagrangian
inside a standardized symplectic frame and mapping back through the signed
block permutation, so every sample is exactly lagrangian by construction
and entry sizes stay controlled by the shear bounds.
"""
from __future__ import annotations

import random
import string
from typing import Sequence

from gmpy2 import mpq

from . import finrel, symplin
from .exact import Subspace, _ONE, _ZERO
from .finrel import FinRelation, FinSet
from .symplin import CanRel, SymplecticSpace


def random_rational(rng: random.Random, max_num: int = 5, max_den: int = 5) -> mpq:
    num = rng.randint(-max_num, max_num)
    den = rng.randint(1, max_den)
    return mpq(num, den)


def random_space(rng: random.Random, max_half_dim: int = 2, allow_point: bool = False) -> SymplecticSpace:
    """One or two signed blocks with half-dimensions up to the bound."""
    if allow_point and rng.random() < 0.1:
        return symplin.POINT
    if max_half_dim >= 2 and rng.random() < 0.25:
        if rng.random() < 0.5:
            return SymplecticSpace(((2, rng.choice((1, -1))),))
        return SymplecticSpace(((1, rng.choice((1, -1))), (1, rng.choice((1, -1)))))
    return SymplecticSpace(((1, rng.choice((1, -1))),))


def _standardizing_permutation(space: SymplecticSpace) -> list[int]:
    """sigma with standard coordinate i landing on space coordinate sigma(i).

    Standard frame: (Q_1..Q_N, P_1..P_N) with omega(Q_i, P_i) = 1. Negative
    blocks swap the roles of their two halves so the pairing signs match.
    """
    n_pairs = space.dim // 2
    sigma = [0] * (2 * n_pairs)
    slot = 0
    offset = 0
    for h, s in space.blocks:
        for a in range(h):
            q_coord, p_coord = offset + a, offset + h + a
            if s == 1:
                sigma[slot], sigma[n_pairs + slot] = q_coord, p_coord
            else:
                sigma[slot], sigma[n_pairs + slot] = p_coord, q_coord
            slot += 1
        offset += 2 * h
    return sigma


def _random_symmetric(rng: random.Random, n: int, max_num: int, max_den: int) -> list[list[mpq]]:
    grid = [[_ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            if rng.random() < 0.6:
                v = random_rational(rng, max_num, max_den)
                grid[i][j] = v
                grid[j][i] = v
    return grid


def random_lagrangian(
    rng: random.Random,
    space: SymplecticSpace,
    shears: int = 1,
    max_num: int = 5,
    max_den: int = 5,
) -> Subspace:
    """A uniform-ish lagrangian subspace of the given space.

    Start from a random coordinate lagrangian of the standard frame, apply
    ``shears`` random symplectic shears (upper or lower triangular block
    type), then push through the standardizing permutation.
    """
    n = space.dim // 2
    if n == 0:
        return Subspace.zero(0)
    picks = [rng.random() < 0.5 for _ in range(n)]
    rows = []
    for i in range(n):
        vec = [_ZERO] * (2 * n)
        vec[i if picks[i] else n + i] = _ONE
        rows.append(vec)
    for _ in range(shears):
        sym = _random_symmetric(rng, n, max_num, max_den)
        upper = rng.random() < 0.5
        new_rows = []
        for vec in rows:
            q, p = vec[:n], vec[n:]
            if upper:
                # (q, p) -> (q, q B + p)
                extra = [sum((q[i] * sym[i][j] for i in range(n) if q[i]), _ZERO) for j in range(n)]
                new_rows.append(q + [p[j] + extra[j] for j in range(n)])
            else:
                extra = [sum((p[i] * sym[i][j] for i in range(n) if p[i]), _ZERO) for j in range(n)]
                new_rows.append([q[j] + extra[j] for j in range(n)] + p)
        rows = new_rows
    sigma = _standardizing_permutation(space)
    placed = []
    for vec in rows:
        out = [_ZERO] * (2 * n)
        for i, x in enumerate(vec):
            if x:
                out[sigma[i]] = x
        placed.append(out)
    return Subspace.span(2 * n, placed)


def random_canrel(
    rng: random.Random,
    target: SymplecticSpace,
    source: SymplecticSpace,
    shears: int = 1,
    max_num: int = 5,
    max_den: int = 5,
) -> CanRel:
    ambient = symplin.product_space(target, source.dual())
    graph = random_lagrangian(rng, ambient, shears=shears, max_num=max_num, max_den=max_den)
    return CanRel(target, source, graph)


def random_word(
    rng: random.Random,
    length: int,
    max_half_dim: int = 2,
    shears: int = 1,
    max_num: int = 5,
    max_den: int = 5,
    spaces: Sequence[SymplecticSpace] | None = None,
) -> list[CanRel]:
    """A composable word of canonical relations over freshly drawn spaces."""
    if spaces is None:
        spaces = [random_space(rng, max_half_dim) for _ in range(length + 1)]
    return [
        random_canrel(rng, spaces[i], spaces[i + 1], shears=shears, max_num=max_num, max_den=max_den)
        for i in range(length)
    ]


# ---------------------------------------------------------------------------
# Finite-set side.
# ---------------------------------------------------------------------------


def random_finset(rng: random.Random, name: str, max_size: int = 4, min_size: int = 0) -> FinSet:
    size = rng.randint(min_size, max_size)
    return FinSet(name, tuple(f"{name}{string.ascii_lowercase[i]}" for i in range(size)))


def random_finrel(rng: random.Random, target: FinSet, source: FinSet, density: float = 0.4) -> FinRelation:
    pairs = frozenset(
        (x, y)
        for x in target.elements
        for y in source.elements
        if rng.random() < density
    )
    return FinRelation(target, source, pairs)


def random_fin_reduction(rng: random.Random, target: FinSet, source: FinSet) -> FinRelation:
    """Surjective and single valued: a partial surjection onto the target.

    Only possible when the target is no bigger than the source (the empty
    target is vacuously fine).
    """
    if len(target) > len(source):
        raise ValueError("no reduction exists onto a strictly bigger target")
    pairs = set()
    sources = list(source.elements)
    rng.shuffle(sources)
    targets = list(target.elements)
    if not targets:
        return FinRelation(target, source, frozenset())
    for i, x in enumerate(targets):
        pairs.add((x, sources[i]))
    for y in sources[len(targets):]:
        if rng.random() < 0.5:
            pairs.add((rng.choice(targets), y))
    return FinRelation(target, source, frozenset(pairs))


def random_fin_coreduction(rng: random.Random, target: FinSet, source: FinSet) -> FinRelation:
    return finrel.transpose(random_fin_reduction(rng, source, target))


def random_fin_word(rng: random.Random, length: int, max_size: int = 3) -> list[FinRelation]:
    sets = [random_finset(rng, string.ascii_uppercase[i], max_size=max_size) for i in range(length + 1)]
    word = []
    for i in range(length):
        roll = rng.random()
        if roll < 0.25 and len(sets[i]) <= len(sets[i + 1]):
            word.append(random_fin_reduction(rng, sets[i], sets[i + 1]))
        elif roll < 0.5 and len(sets[i]) >= len(sets[i + 1]):
            word.append(random_fin_coreduction(rng, sets[i], sets[i + 1]))
        else:
            word.append(random_finrel(rng, sets[i], sets[i + 1]))
    return word
