"""Symplectic vector spaces over Q and linear canonical relations.

A space is an ordered list of signed standard blocks; its form is the
block-diagonal matrix of sign * J(h) with J(h) = [[0, I], [-I, 0]]. A
canonical relation to X from Y is a lagrangian subspace of X (+) Y under
the form of X x dual(Y), coordinates target-first. Keeping every form
assembled from signed standard blocks makes duals and products syntactic:
negate the signs, concatenate the lists.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from gmpy2 import mpq

from .errors import CompositionMismatch, DimensionMismatch, InvariantViolation
from .exact import Matrix, Subspace, _ONE, _ZERO, _kernel_rows, _mul_rows, _rref_rows
from .finrel import RelationProfile


@dataclass(frozen=True)
class SymplecticSpace:
    """Signed block decomposition; the empty block list is the point."""

    blocks: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple((int(h), int(s)) for h, s in self.blocks))
        for h, s in self.blocks:
            if h < 1:
                raise InvariantViolation(f"block half-dimension must be >= 1, got {h}")
            if s not in (1, -1):
                raise InvariantViolation(f"block sign must be +1 or -1, got {s}")

    @property
    def dim(self) -> int:
        return 2 * sum(h for h, _ in self.blocks)

    def dual(self) -> SymplecticSpace:
        """Same blocks, all signs negated; an involution."""
        return SymplecticSpace(tuple((h, -s) for h, s in self.blocks))

    def __mul__(self, other: SymplecticSpace) -> SymplecticSpace:
        return SymplecticSpace(self.blocks + other.blocks)

    @cached_property
    def form_pairs(self) -> tuple[tuple[int, int, int], ...]:
        """Sparse form data: (i, j, s) triples meaning omega(e_i, e_j) = s (and the
        antisymmetric mirror). Everything off these index pairs pairs to zero."""
        pairs = []
        offset = 0
        for h, s in self.blocks:
            for a in range(h):
                pairs.append((offset + a, offset + h + a, s))
            offset += 2 * h
        return tuple(pairs)

    def form_matrix(self) -> Matrix:
        n = self.dim
        grid = [[_ZERO] * n for _ in range(n)]
        for i, j, s in self.form_pairs:
            grid[i][j] = mpq(s)
            grid[j][i] = mpq(-s)
        return Matrix(n, n, tuple(tuple(r) for r in grid))

    def pairing(self, u: Sequence[mpq], v: Sequence[mpq]) -> mpq:
        """omega(u, v) evaluated through the sparse form data."""
        total = _ZERO
        for i, j, s in self.form_pairs:
            term = u[i] * v[j] - u[j] * v[i]
            if term:
                total = total + (term if s == 1 else -term)
        return total


POINT = SymplecticSpace(())


def product_space(*spaces: SymplecticSpace) -> SymplecticSpace:
    blocks: tuple[tuple[int, int], ...] = ()
    for s in spaces:
        blocks = blocks + s.blocks
    return SymplecticSpace(blocks)


def _omega_image(space: SymplecticSpace, u: Sequence[mpq]) -> list[tuple[int, mpq]]:
    """Sparse row vector u . Omega, so that omega(u, v) = sum w_k v_k."""
    w: dict[int, mpq] = {}
    for i, j, s in space.form_pairs:
        ui, uj = u[i], u[j]
        if ui:
            w[j] = w.get(j, _ZERO) + (ui if s == 1 else -ui)
        if uj:
            w[i] = w.get(i, _ZERO) - (uj if s == 1 else -uj)
    return [(k, v) for k, v in w.items() if v]


def is_lagrangian(space: SymplecticSpace, sub: Subspace) -> bool:
    """Isotropic and of half the ambient dimension.

    Total on subspaces: a wrong-dimension subspace is simply not lagrangian.
    """
    if sub.ambient != space.dim:
        raise DimensionMismatch(
            f"subspace of ambient dimension {sub.ambient} against space of dimension {space.dim}"
        )
    if 2 * sub.dim != space.dim:
        return False
    rows = sub.rows
    for a in range(len(rows)):
        w = _omega_image(space, rows[a])
        for b in range(a + 1, len(rows)):
            rb = rows[b]
            total = _ZERO
            for k, v in w:
                x = rb[k]
                if x:
                    total = total + v * x
            if total:
                return False
    return True


@dataclass(frozen=True)
class CanRel:
    """A linear canonical relation target <- source.

    The graph lives in Q^(dim target + dim source), target coordinates
    first, and must be lagrangian for the form of target x dual(source);
    the constructor enforces this.
    """

    target: SymplecticSpace
    source: SymplecticSpace
    graph: Subspace

    def __post_init__(self):
        ambient = self.target.dim + self.source.dim
        if self.graph.ambient != ambient:
            raise DimensionMismatch(
                f"graph ambient {self.graph.ambient}, expected {ambient}"
            )
        space = product_space(self.target, self.source.dual())
        if 2 * self.graph.dim != ambient:
            raise InvariantViolation(
                f"graph dimension {self.graph.dim} is not half of {ambient}"
            )
        if not is_lagrangian(space, self.graph):
            raise InvariantViolation("graph is not isotropic for the target (+) dual(source) form")

    def is_identity(self) -> bool:
        return self.target == self.source and self == identity(self.target)

    def __matmul__(self, other: CanRel) -> CanRel:
        return compose(self, other)


@dataclass(frozen=True)
class PairAnalysis:
    """Transversality and monicity diagnostics for a composable pair."""

    transversal: bool
    monic: bool
    strongly_transversal: bool
    transversality_defect: int
    monicity_defect: int
    fiber_product: Subspace
    composite: CanRel

    @property
    def defects(self) -> tuple[int, int]:
        return (self.transversality_defect, self.monicity_defect)


def identity(space: SymplecticSpace) -> CanRel:
    n = space.dim
    rows = []
    for i in range(n):
        row = [_ZERO] * (2 * n)
        row[i] = _ONE
        row[n + i] = _ONE
        rows.append(row)
    return CanRel(space, space, Subspace(2 * n, tuple(tuple(r) for r in rows)))


def graph_of_map(m: Matrix, target: SymplecticSpace, source: SymplecticSpace) -> CanRel:
    """The graph {(m v, v)} as a relation target <- source.

    Valid only when m intertwines the forms; otherwise the lagrangian
    check fails and the constructor reports which invariant broke.
    """
    if m.rows != target.dim or m.cols != source.dim:
        raise DimensionMismatch(
            f"map shape {m.rows}x{m.cols} against target/source dimensions "
            f"{target.dim}/{source.dim}"
        )
    rows = []
    for i in range(source.dim):
        row = list(m.column(i))
        unit = [_ZERO] * source.dim
        unit[i] = _ONE
        rows.append(row + unit)
    return CanRel(target, source, Subspace.span(target.dim + source.dim, rows))


def diagonal_reduction(y: SymplecticSpace) -> CanRel:
    """The diagonal of Y x dual(Y), as a morphism to the point from dual(Y) x Y."""
    n = y.dim
    rows = []
    for i in range(n):
        row = [_ZERO] * (2 * n)
        row[i] = _ONE
        row[n + i] = _ONE
        rows.append(row)
    return CanRel(POINT, y.dual() * y, Subspace(2 * n, tuple(tuple(r) for r in rows)))


def graph_coreduction(f: CanRel) -> CanRel:
    """The graph of f re-read as a morphism to target x dual(source) from the point."""
    return CanRel(f.target * f.source.dual(), POINT, f.graph)


def transpose(f: CanRel) -> CanRel:
    dt, ds = f.target.dim, f.source.dim
    rows = [row[dt:] + row[:dt] for row in f.graph.rows]
    red, _ = _rref_rows(rows, dt + ds)
    return CanRel(f.source, f.target, Subspace(dt + ds, tuple(tuple(r) for r in red)))


def product(f: CanRel, g: CanRel) -> CanRel:
    """f x g, with coordinates re-interleaved to targets-first convention."""
    tf, sf, tg, sg = f.target.dim, f.source.dim, g.target.dim, g.source.dim
    ambient = tf + sf + tg + sg
    rows = []
    for row in f.graph.rows:
        rows.append(list(row[:tf]) + [_ZERO] * tg + list(row[tf:]) + [_ZERO] * sg)
    for row in g.graph.rows:
        rows.append([_ZERO] * tf + list(row[:tg]) + [_ZERO] * sf + list(row[tg:]))
    red, _ = _rref_rows(rows, ambient)
    return CanRel(
        f.target * g.target, f.source * g.source, Subspace(ambient, tuple(tuple(r) for r in red))
    )


def _require_composable(f: CanRel, g: CanRel):
    if f.source != g.target:
        raise CompositionMismatch(
            f"source blocks {f.source.blocks} do not match target blocks {g.target.blocks}"
        )


def _matching_space(f: CanRel, g: CanRel) -> list[list[mpq]]:
    """Basis of the coefficient pairs (u, v) with u.F and v.G agreeing on the
    shared middle coordinates; these parametrize the fiber product."""
    dx, dy = f.target.dim, f.source.dim
    frows, grows = f.graph.rows, g.graph.rows
    kf = len(frows)
    equations = []
    for t in range(dy):
        col = dx + t
        equations.append([frows[i][col] for i in range(kf)] + [-grows[j][t] for j in range(len(grows))])
    return _kernel_rows(equations, kf + len(grows))


def _composite_subspace(f: CanRel, g: CanRel, matching: list[list[mpq]]) -> Subspace:
    dx, dy, dz = f.target.dim, f.source.dim, g.source.dim
    frows, grows = f.graph.rows, g.graph.rows
    kf = len(frows)
    outer = []
    for row in frows:
        outer.append(list(row[:dx]) + [_ZERO] * dz)
    for row in grows:
        outer.append([_ZERO] * dx + list(row[dy:]))
    rows = _mul_rows(matching, outer, dx + dz)
    red, _ = _rref_rows(rows, dx + dz)
    return Subspace(dx + dz, tuple(tuple(r) for r in red))


def compose(f: CanRel, g: CanRel) -> CanRel:
    """Fiber product against the middle diagonal, projected to target x source.

    Solved in coefficient space: match the middle coordinates of the two
    graphs, then read off the outer coordinates of each matching pair.
    """
    _require_composable(f, g)
    matching = _matching_space(f, g)
    return CanRel(f.target, g.source, _composite_subspace(f, g, matching))


def analyze_pair(f: CanRel, g: CanRel) -> PairAnalysis:
    """Full transversality/monicity diagnostics plus the composite.

    The transversality defect is the codimension of (f x g) + (X x diag x Z)
    in the big ambient space, computed through the dimension formula; the
    monicity defect is the dimension lost when projecting the fiber
    product onto the outer coordinates.
    """
    _require_composable(f, g)
    dx, dy, dz = f.target.dim, f.source.dim, g.source.dim
    frows, grows = f.graph.rows, g.graph.rows
    kf, kg = len(frows), len(grows)
    matching = _matching_space(f, g)
    fiber_dim = len(matching)

    stacked = []
    for vec in matching:
        u, v = vec[:kf], vec[kf:]
        left = _mul_rows([u], frows, dx + dy)[0] if kf else [_ZERO] * (dx + dy)
        right = _mul_rows([v], grows, dy + dz)[0] if kg else [_ZERO] * (dy + dz)
        stacked.append(left + right)
    red, _ = _rref_rows(stacked, dx + 2 * dy + dz)
    fiber = Subspace(dx + 2 * dy + dz, tuple(tuple(r) for r in red))

    composite_sub = _composite_subspace(f, g, matching)
    t_defect = dy + fiber_dim - kf - kg
    m_defect = fiber_dim - composite_sub.dim
    composite = CanRel(f.target, g.source, composite_sub)
    return PairAnalysis(
        transversal=t_defect == 0,
        monic=m_defect == 0,
        strongly_transversal=t_defect == 0 and m_defect == 0,
        transversality_defect=t_defect,
        monicity_defect=m_defect,
        fiber_product=fiber,
        composite=composite,
    )


def classify(f: CanRel) -> RelationProfile:
    """Rank tests on the two coordinate slices of the graph.

    Projection onto the target is onto iff the target slice has full
    column rank; the relation is single valued iff the source slice has
    full row rank (no graph vector sits entirely over the target); and
    dually for the other two flags.
    """
    dt = f.target.dim
    rows = f.graph.rows
    k = len(rows)
    _, piv_t = _rref_rows([row[:dt] for row in rows], dt)
    _, piv_s = _rref_rows([row[dt:] for row in rows], f.source.dim)
    rank_t, rank_s = len(piv_t), len(piv_s)
    return RelationProfile(
        surjective=rank_t == dt,
        cosurjective=rank_s == f.source.dim,
        injective=rank_t == k,
        coinjective=rank_s == k,
    )
