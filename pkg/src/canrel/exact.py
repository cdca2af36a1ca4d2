"""Exact rational linear algebra: matrices and canonical subspaces.

The scalar is gmpy2.mpq: arbitrary-precision, always stored reduced with a
positive denominator. No floating point anywhere; every predicate built on
top of this module is an exact yes/no question.

Subspaces are kept in reduced row echelon form (unit pivots, strictly
increasing pivot columns, no zero rows), so two subspaces are equal as sets
iff their stored bases are identical. Vectors are rows; matrices act on
column vectors, and images of subspaces follow that orientation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from gmpy2 import mpq

from .errors import DimensionMismatch

Rational = mpq
RationalLike = Union[int, str, Fraction, mpq]

_ZERO = mpq(0)
_ONE = mpq(1)

_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def rational(value: RationalLike) -> mpq:
    """Coerce an int, ``p/q`` string, Fraction, or mpq to mpq.

    Floats are refused: admitting one would silently poison every exact
    predicate downstream.
    """
    if type(value) is mpq:
        return value
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; exact rationals only")
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ValueError(f"invalid rational literal {value!r}")
        return mpq(value)
    try:
        return mpq(value)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"cannot interpret {value!r} as a rational") from exc


def format_rational(value: mpq) -> str:
    """Render as ``p/q``, or plain ``p`` when the denominator is 1."""
    return str(value)


# ---------------------------------------------------------------------------
# Row-level core. Rows are lists of mpq; all loops skip zeros because the
# matrices this package produces (graph bases, diagonals, projections) are
# sparse and structured.
# ---------------------------------------------------------------------------


def _rref_rows(rows: Sequence[Sequence[mpq]], ncols: int) -> tuple[list[list[mpq]], list[int]]:
    """Gauss-Jordan elimination to unit-pivot RREF.

    Returns (nonzero rows, pivot columns). Pivot rows are normalized
    immediately, which keeps intermediate entries no larger than the true
    RREF entries of leading submatrices.
    """
    work = [list(r) for r in rows]
    pivots: list[int] = []
    npiv = 0
    nrows = len(work)
    for c in range(ncols):
        piv = -1
        for i in range(npiv, nrows):
            if work[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        work[npiv], work[piv] = work[piv], work[npiv]
        prow = work[npiv]
        p = prow[c]
        if p != 1:
            inv = 1 / p
            work[npiv] = prow = [x * inv if x else _ZERO for x in prow]
        nz = [(k, v) for k, v in enumerate(prow) if v]
        for i in range(nrows):
            if i == npiv:
                continue
            row = work[i]
            q = row[c]
            if q:
                for k, v in nz:
                    row[k] = row[k] - q * v
        pivots.append(c)
        npiv += 1
        if npiv == nrows:
            break
    return work[:npiv], pivots


def _kernel_rows(rows: Sequence[Sequence[mpq]], ncols: int) -> list[list[mpq]]:
    """Basis of {x : M x = 0} for M given by ``rows``, one vector per free column."""
    red, pivots = _rref_rows(rows, ncols)
    pivset = set(pivots)
    basis: list[list[mpq]] = []
    for c in range(ncols):
        if c in pivset:
            continue
        vec = [_ZERO] * ncols
        vec[c] = _ONE
        for i, pc in enumerate(pivots):
            v = red[i][c]
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def _mul_rows(arows: Sequence[Sequence[mpq]], brows: Sequence[Sequence[mpq]], bcols: int) -> list[list[mpq]]:
    """Row-major product A·B, skipping zero entries on both sides."""
    out: list[list[mpq]] = []
    for arow in arows:
        acc = [_ZERO] * bcols
        for j, a in enumerate(arow):
            if a:
                brow = brows[j]
                for k, b in enumerate(brow):
                    if b:
                        acc[k] = acc[k] + a * b
        out.append(acc)
    return out


def _coerce_rows(rows: Iterable[Iterable[RationalLike]], ncols: int) -> list[list[mpq]]:
    out = []
    for row in rows:
        r = [rational(x) for x in row]
        if len(r) != ncols:
            raise DimensionMismatch(f"row of length {len(r)} in ambient dimension {ncols}")
        out.append(r)
    return out


# ---------------------------------------------------------------------------
# Public value types.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix of rationals, row-major."""

    rows: int
    cols: int
    entries: tuple[tuple[mpq, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(
                f"entry grid does not match declared shape {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]], cols: int | None = None) -> Matrix:
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = _coerce_rows(rows, cols)
        return cls(len(data), cols, tuple(tuple(r) for r in data))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, tuple(
            tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)
        ))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, tuple(tuple(_ZERO for _ in range(cols)) for _ in range(rows)))

    def rref(self) -> Matrix:
        """The unique reduced row echelon form, zero rows retained."""
        red, _ = _rref_rows(self.entries, self.cols)
        pad = [[_ZERO] * self.cols for _ in range(self.rows - len(red))]
        return Matrix(self.rows, self.cols, tuple(tuple(r) for r in red + pad))

    def rank(self) -> int:
        _, pivots = _rref_rows(self.entries, self.cols)
        return len(pivots)

    def kernel(self) -> Subspace:
        """Null space {x : self·x = 0}, as a canonical subspace of Q^cols."""
        basis = _kernel_rows(self.entries, self.cols)
        return Subspace.span(self.cols, basis)

    def transpose(self) -> Matrix:
        return Matrix(self.cols, self.rows, tuple(
            tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)
        ))

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        data = _mul_rows(self.entries, other.entries, other.cols)
        return Matrix(self.rows, other.cols, tuple(tuple(r) for r in data))

    def column(self, j: int) -> tuple[mpq, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in self.entries) + "]"


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^ambient in canonical RREF basis form.

    ``rows`` always holds the unique reduced basis: unit pivots, strictly
    increasing pivot columns, no zero rows. Construct via ``span``; the raw
    constructor trusts its input.
    """

    ambient: int
    rows: tuple[tuple[mpq, ...], ...]

    @classmethod
    def span(cls, ambient: int, rows: Iterable[Iterable[RationalLike]]) -> Subspace:
        data = _coerce_rows(rows, ambient)
        red, _ = _rref_rows(data, ambient)
        return cls(ambient, tuple(tuple(r) for r in red))

    @classmethod
    def zero(cls, ambient: int) -> Subspace:
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> Subspace:
        return cls(ambient, tuple(
            tuple(_ONE if i == j else _ZERO for j in range(ambient)) for i in range(ambient)
        ))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> Matrix:
        return Matrix(len(self.rows), self.ambient, self.rows)

    def pivot_columns(self) -> tuple[int, ...]:
        return tuple(next(k for k, v in enumerate(row) if v) for row in self.rows)

    def contains(self, vector: Sequence[RationalLike]) -> bool:
        v = [rational(x) for x in vector]
        if len(v) != self.ambient:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient}")
        for row in self.rows:
            pc = next(k for k, x in enumerate(row) if x)
            coeff = v[pc]
            if coeff:
                for k, x in enumerate(row):
                    if x:
                        v[k] = v[k] - coeff * x
        return not any(v)

    def __le__(self, other: Subspace) -> bool:
        """Containment as sets."""
        if self.ambient != other.ambient:
            raise DimensionMismatch("containment across different ambient dimensions")
        return all(other.contains(row) for row in self.rows)

    def __add__(self, other: Subspace) -> Subspace:
        """Span of the union of bases."""
        if self.ambient != other.ambient:
            raise DimensionMismatch(
                f"sum of subspaces in ambient dimensions {self.ambient} and {other.ambient}"
            )
        red, _ = _rref_rows(list(self.rows) + list(other.rows), self.ambient)
        return Subspace(self.ambient, tuple(tuple(r) for r in red))

    def __and__(self, other: Subspace) -> Subspace:
        """Intersection, via the coefficient-space kernel of stacked bases."""
        if self.ambient != other.ambient:
            raise DimensionMismatch(
                f"intersection of subspaces in ambient dimensions {self.ambient} and {other.ambient}"
            )
        if not self.rows or not other.rows:
            return Subspace.zero(self.ambient)
        ka = len(self.rows)
        stacked = list(self.rows) + list(other.rows)
        transposed = [[stacked[i][j] for i in range(len(stacked))] for j in range(self.ambient)]
        matching = _kernel_rows(transposed, len(stacked))
        rows = _mul_rows([vec[:ka] for vec in matching], self.rows, self.ambient)
        red, _ = _rref_rows(rows, self.ambient)
        return Subspace(self.ambient, tuple(tuple(r) for r in red))

    def apply(self, m: Matrix) -> Subspace:
        """Image under the linear map ``m`` (acting on column vectors)."""
        if m.cols != self.ambient:
            raise DimensionMismatch(
                f"map with {m.cols} columns applied to subspace of ambient dimension {self.ambient}"
            )
        mt = [[m.entries[i][j] for i in range(m.rows)] for j in range(m.cols)]
        rows = _mul_rows(self.rows, mt, m.rows)
        red, _ = _rref_rows(rows, m.rows)
        return Subspace(m.rows, tuple(tuple(r) for r in red))
