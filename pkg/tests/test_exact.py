"""Matrix/subspace algebra: frozen examples plus randomized invariants."""
from __future__ import annotations

import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from canrel.errors import DimensionMismatch
from canrel.exact import Matrix, Subspace, format_rational, rational

rationals = st.builds(mpq, st.integers(-9, 9), st.integers(1, 9))


def matrices(max_dim: int = 8):
    return st.integers(0, max_dim).flatmap(
        lambda r: st.integers(0 if r == 0 else 1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r
            ).map(lambda rows: Matrix.from_rows(rows, c))
        )
    )


class TestRational:
    def test_parse_forms(self):
        assert rational("1/3") == mpq(1, 3)
        assert rational("-4/6") == mpq(-2, 3)
        assert rational(7) == mpq(7)
        assert rational("7") == mpq(7)

    def test_round_trip(self):
        for text in ["1/3", "-2/7", "0", "5"]:
            assert format_rational(rational(text)) == text

    def test_rejects_floats_and_garbage(self):
        with pytest.raises(TypeError):
            rational(0.5)
        with pytest.raises(ValueError):
            rational("1.5")
        with pytest.raises(ValueError):
            rational("2/0")

    def test_normalized(self):
        q = rational("-6/4")
        assert q.numerator == -3 and q.denominator == 2


class TestRref:
    def test_dependent_rows(self):
        m = Matrix.from_rows([[2, 4], [1, 2]])
        assert m.rref() == Matrix.from_rows([[1, 2], [0, 0]])
        assert m.rank() == 1

    def test_identity_fixed(self):
        m = Matrix.identity(3)
        assert m.rref() == m

    def test_swap(self):
        # hand elimination: swap the rows, pivots already unit
        m = Matrix.from_rows([[0, 1], [1, 0]])
        assert m.rref() == Matrix.identity(2)

    @settings(max_examples=60, deadline=None)
    @given(matrices())
    def test_idempotent(self, m):
        assert m.rref().rref() == m.rref()

    @settings(max_examples=60, deadline=None)
    @given(matrices())
    def test_rank_nullity(self, m):
        assert m.rank() + m.kernel().dim == m.cols


class TestKernel:
    def test_zero_matrix(self):
        assert Matrix.zeros(2, 2).kernel() == Subspace.full(2)

    def test_identity(self):
        assert Matrix.identity(3).kernel() == Subspace.zero(3)

    def test_line(self):
        # solve x + 2y = 0 by hand: multiples of (-2, 1)
        k = Matrix.from_rows([[1, 2]]).kernel()
        assert k == Subspace.span(2, [[-2, 1]])
        assert k.contains([-2, 1])

    def test_annihilation(self):
        rng = random.Random(1)
        for _ in range(25):
            rows, cols = rng.randint(1, 5), rng.randint(1, 5)
            m = Matrix.from_rows(
                [[mpq(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)]
            )
            for vec in m.kernel().rows:
                image = [sum((m.entries[i][j] * vec[j] for j in range(cols)), mpq(0)) for i in range(rows)]
                assert not any(image)


class TestSubspaceOps:
    def test_intersect_self(self):
        a = Subspace.span(3, [[1, 2, 3], [0, 1, 1]])
        assert (a & a) == a

    def test_intersect_distinct_lines(self):
        a = Subspace.span(2, [[1, 0]])
        b = Subspace.span(2, [[1, 1]])
        assert (a & b) == Subspace.zero(2)

    def test_intersect_planes(self):
        a = Subspace.span(3, [[1, 0, 0], [0, 1, 0]])
        b = Subspace.span(3, [[0, 1, 0], [0, 0, 1]])
        assert (a & b) == Subspace.span(3, [[0, 1, 0]])

    def test_sum_with_zero(self):
        a = Subspace.span(2, [[1, 5]])
        assert a + Subspace.zero(2) == a

    def test_sum_complementary_lines(self):
        assert Subspace.span(2, [[1, 0]]) + Subspace.span(2, [[0, 1]]) == Subspace.full(2)

    def test_sum_rank(self):
        # stacked basis has rank 2, so the sum is the whole plane
        assert Subspace.span(2, [[1, 0]]) + Subspace.span(2, [[1, 1]]) == Subspace.full(2)

    def test_ambient_mismatch(self):
        with pytest.raises(DimensionMismatch):
            Subspace.full(2) & Subspace.full(3)
        with pytest.raises(DimensionMismatch):
            Subspace.full(2) + Subspace.full(3)

    def test_apply_identity(self):
        a = Subspace.span(3, [[1, 2, 3]])
        assert a.apply(Matrix.identity(3)) == a

    def test_apply_projection_of_diagonal(self):
        diag = Subspace.span(2, [[1, 1]])
        p = Matrix.from_rows([[1, 0]])
        assert diag.apply(p) == Subspace.full(1)

    def test_apply_coordinate_selection(self):
        # (1,2,2,3) under rows-1-and-4 selection is (1,3), by direct product
        m = Matrix.from_rows([[1, 0, 0, 0], [0, 0, 0, 1]])
        s = Subspace.span(4, [[1, 2, 2, 3]])
        assert s.apply(m) == Subspace.span(2, [[1, 3]])

    def test_apply_mismatch(self):
        with pytest.raises(DimensionMismatch):
            Subspace.full(3).apply(Matrix.identity(2))

    def test_contains_checks_length(self):
        with pytest.raises(DimensionMismatch):
            Subspace.full(3).contains([1, 2])

    def test_projection_to_nothing(self):
        s = Subspace.span(2, [[1, 1]])
        assert s.apply(Matrix.zeros(0, 2)) == Subspace.zero(0)


def random_subspace(rng: random.Random, ambient: int) -> Subspace:
    k = rng.randint(0, ambient)
    rows = [
        [mpq(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(ambient)] for _ in range(k)
    ]
    return Subspace.span(ambient, rows)


class TestSubspaceInvariants:
    def test_canonical_form_shape(self):
        rng = random.Random(2)
        for _ in range(50):
            s = random_subspace(rng, rng.randint(0, 6))
            pivots = s.pivot_columns()
            assert list(pivots) == sorted(set(pivots))
            for row, pc in zip(s.rows, pivots):
                assert row[pc] == 1
                assert not any(row[:pc])
                # pivot columns of other rows are cleared
                for other in s.rows:
                    if other is not row:
                        assert other[pc] == 0

    def test_dimension_formula(self):
        rng = random.Random(3)
        for _ in range(80):
            n = rng.randint(1, 6)
            a, b = random_subspace(rng, n), random_subspace(rng, n)
            assert a.dim + b.dim == (a + b).dim + (a & b).dim

    def test_equality_matches_membership_oracle(self):
        rng = random.Random(4)
        for _ in range(80):
            n = rng.randint(1, 5)
            a, b = random_subspace(rng, n), random_subspace(rng, n)
            mutual = all(b.contains(r) for r in a.rows) and all(a.contains(r) for r in b.rows)
            assert (a == b) == mutual

    def test_intersection_contained_in_both(self):
        rng = random.Random(5)
        for _ in range(40):
            n = rng.randint(1, 6)
            a, b = random_subspace(rng, n), random_subspace(rng, n)
            meet = a & b
            assert meet <= a and meet <= b
            assert a <= a + b and b <= a + b
