"""
Tests for the exact linear algebra layer.

Elimination, the canonical subspace lattice, orthogonal complements and
projections along direct sums.
"""

from fractions import Fraction as F

import numpy as np
import pytest

from errors import DimensionMismatchError, NotDirectSumError
from exactalg import (Matrix, Subspace, contains, intersect, inverse,
                      is_positive_definite, kernel, orth_complement,
                      primitive_integer_vector, project, rank, rref, solve,
                      span, subspace_sum, to_rational, unit_vector, vec_add)


def _random_subspace(rng, ambient: int) -> Subspace:
    count = int(rng.integers(0, ambient + 1))
    vectors = [[int(x) for x in rng.integers(-3, 4, size=ambient)] for _ in range(count)]
    return span(vectors, ambient)


@pytest.mark.unit
class TestRationals:
    """Test exact scalar parsing."""

    def test_fraction_string(self):
        assert to_rational("1/3") == F(1, 3)
        assert to_rational("-4/6") == F(-2, 3)
        assert to_rational(7) == F(7)

    def test_zero_denominator(self):
        with pytest.raises(ValueError):
            to_rational("1/0")

    def test_rejects_float_and_garbage(self):
        with pytest.raises(TypeError):
            to_rational(0.5)
        with pytest.raises(ValueError):
            to_rational("1.5")
        with pytest.raises(TypeError):
            to_rational(True)

    def test_primitive_integer_vector(self):
        assert primitive_integer_vector((F(1, 2), F(-3, 4))) == (F(2), F(-3))
        assert primitive_integer_vector((F(0), F(0))) == (F(0), F(0))


@pytest.mark.unit
class TestElimination:
    """Test rref, solve, kernel and inverse."""

    def test_rref_rank_one(self):
        assert rref(Matrix.from_rows([[2, 4], [1, 2]])) == Matrix.from_rows([[1, 2], [0, 0]])

    def test_rref_identity_and_permutation(self):
        assert rref(Matrix.identity(3)) == Matrix.identity(3)
        assert rref(Matrix.from_rows([[0, 1], [1, 0]])) == Matrix.identity(2)

    def test_rref_idempotent_and_row_space(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            rows = [[int(x) for x in rng.integers(-4, 5, size=4)] for _ in range(3)]
            m = Matrix.from_rows(rows)
            r = rref(m)
            assert rref(r) == r
            assert span(rows, 4) == span(r.row_vectors(), 4)

    def test_solve_identity(self):
        assert solve(Matrix.identity(2), ["3", "-1/2"]) == (F(3), F(-1, 2))

    def test_solve_free_variables_zero(self):
        assert solve(Matrix.from_rows([[1, 1]]), [0]) == (F(0), F(0))

    def test_solve_inconsistent(self):
        assert solve(Matrix.from_rows([[1], [0]]), [0, 1]) is None

    def test_solve_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            solve(Matrix.identity(2), [1])

    def test_kernel(self):
        k = kernel(Matrix.from_rows([[1, 1, 0]]))
        assert k.dim == 2
        assert (F(1), F(-1), F(0)) in k

    def test_inverse(self):
        m = Matrix.from_rows([[2, 1], [1, 1]])
        assert m @ inverse(m) == Matrix.identity(2)


@pytest.mark.unit
class TestSubspaceLattice:
    """Test span, sum, intersection and containment."""

    def test_sum_of_axes(self):
        e1, e2 = unit_vector(3, 0), unit_vector(3, 1)
        assert subspace_sum(span([e1], 3), span([e2], 3)) == span([e1, e2], 3)

    def test_intersection_by_hand(self):
        u = span([[1, 1, 0], [0, 0, 1]], 3)
        v = span([[0, 1, 0], [0, 0, 1]], 3)
        assert intersect(u, v) == span([[0, 0, 1]], 3)

    def test_whole_space_contains_everything(self):
        assert contains(Subspace.full(3), span([[1, 2, 3]], 3))
        assert not contains(span([[1, 0, 0]], 3), span([[0, 1, 0]], 3))

    def test_canonical_form(self):
        assert span([[2, 4], [1, 3]], 2) == Subspace.full(2)
        assert span([[2, 4]], 2).basis == ((F(1), F(2)),)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            subspace_sum(Subspace.full(2), Subspace.full(3))

    def test_modular_law(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            u = _random_subspace(rng, 6)
            v = _random_subspace(rng, 6)
            assert subspace_sum(u, v).dim + intersect(u, v).dim == u.dim + v.dim

    def test_coordinates_and_combine(self):
        u = span([[1, 0, 2], [0, 1, -1]], 3)
        x = (F(3), F(-2), F(8))
        assert u.combine(u.coordinates(x)) == x


@pytest.mark.unit
class TestOrthogonality:
    """Test complements and projections."""

    def test_complement_identity_gram(self):
        assert orth_complement(span([unit_vector(3, 0)], 3), Matrix.identity(3)) == span(
            [unit_vector(3, 1), unit_vector(3, 2)], 3
        )

    def test_complement_of_zero(self):
        assert orth_complement(Subspace.zero(2), Matrix.identity(2)) == Subspace.full(2)

    def test_complement_weighted_gram(self):
        gram = Matrix.from_rows([[1, 0], [0, 2]])
        assert orth_complement(span([[1, 1]], 2), gram) == span([[-2, 1]], 2)

    def test_complement_involution(self):
        rng = np.random.default_rng(3)
        gram = Matrix.from_rows([[2, 1, 0, 0], [1, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 3]])
        assert is_positive_definite(gram)
        for _ in range(50):
            u = _random_subspace(rng, 4)
            assert orth_complement(orth_complement(u, gram), gram) == u

    def test_not_positive_definite(self):
        assert not is_positive_definite(Matrix.from_rows([[1, 2], [2, 1]]))
        with pytest.raises(ValueError):
            orth_complement(Subspace.zero(2), Matrix.from_rows([[1, 2], [2, 1]]))

    def test_project_axes(self):
        onto = span([unit_vector(2, 0)], 2)
        along = span([unit_vector(2, 1)], 2)
        assert project((1, 1), onto, along) == (F(1), F(0))
        assert project((5, 0), onto, along) == (F(5), F(0))

    def test_project_not_direct(self):
        u = span([[1, 0]], 2)
        with pytest.raises(NotDirectSumError):
            project((1, 1), u, u)

    def test_projections_add_up(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            u = _random_subspace(rng, 4)
            v = orth_complement(u, Matrix.identity(4))
            x = tuple(F(int(c)) for c in rng.integers(-5, 6, size=4))
            assert vec_add(project(x, u, v), project(x, v, u)) == x
