"""
Tests for rational polyhedral cones.

Conversions through ppl are checked against the independent
Fourier-Motzkin membership oracle on fuzzed cones.
"""

from fractions import Fraction as F

import numpy as np
import pytest

import polycone
from errors import DimensionMismatchError
from exactalg import Matrix, span
from polycone.fourier_motzkin import eliminate, hull_contains


def _ints(rows):
    return [[int(x) for x in r] for r in rows]


def _random_vectors(rng, count: int, dim: int):
    return [[int(x) for x in rng.integers(-3, 4, size=dim)] for _ in range(count)]


@pytest.mark.unit
class TestConstructors:
    """Test both descriptions of small cones."""

    def test_negative_ray(self):
        c = polycone.from_inequalities([[4]], 1)
        assert _ints(c.generators) == [[-1]]
        assert _ints(c.inequalities) == [[1]]
        assert not c.is_full()

    def test_no_inequalities_is_full(self):
        c = polycone.from_inequalities([], 2)
        assert c.is_full()
        assert _ints(c.generators) == [[-1, 0], [0, -1], [0, 1], [1, 0]]

    def test_empty_generators_is_zero(self):
        c = polycone.from_generators([], 2)
        assert c.is_zero()
        assert polycone.edge(c).is_zero()

    def test_redundant_inequality_dropped(self):
        c = polycone.from_inequalities([[-2, 4], [2, 2], [4, -2]], 2)
        assert _ints(c.inequalities) == [[-1, 2], [2, -1]]
        assert _ints(c.generators) == [[-2, -1], [-1, -2]]

    def test_half_plane(self):
        c = polycone.from_inequalities([[1, 0]], 2)
        assert _ints(c.generators) == [[-1, 0], [0, -1], [0, 1]]
        assert polycone.edge(c) == span([[0, 1]], 2)

    def test_ray_off_the_line_is_projected(self):
        c = polycone.from_generators([[1, 1], [0, 1], [0, -1]], 2)
        assert _ints(c.generators) == [[0, -1], [0, 1], [1, 0]]
        assert c == polycone.from_inequalities([[-1, 0]], 2)

    def test_large_coefficients_stay_exact(self):
        c = polycone.from_generators([[F(1, 10**12), F(-7, 3)], [10**15, 1]], 2)
        assert _ints(c.generators) == [[3, -7 * 10**12], [10**15, 1]]
        assert (F(10**15), F(1)) in c

    def test_zero_weights_ignored(self):
        c = polycone.support_cone([[0, 0], [1, 1]], 2)
        assert c == polycone.from_inequalities([[1, 1]], 2)

    def test_membership(self):
        c = polycone.from_generators([[1, 0], [1, 1]], 2)
        assert (F(3), F(1)) in c
        assert (F(-1), F(0)) not in c
        assert c.strictly_inside((2, 1))
        assert not c.strictly_inside((1, 0))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            polycone.from_inequalities([[1, 2]], 3)
        with pytest.raises(DimensionMismatchError):
            polycone.contains(polycone.from_inequalities([], 1), polycone.from_inequalities([], 2))


@pytest.mark.unit
class TestOperations:
    """Test dual, edge, intersection and images."""

    def test_dual_is_involution(self):
        rng = np.random.default_rng(17)
        for _ in range(60):
            dim = int(rng.integers(1, 4))
            c = polycone.from_generators(_random_vectors(rng, int(rng.integers(0, 5)), dim), dim)
            assert polycone.dual(polycone.dual(c)) == c

    def test_dual_of_full_is_zero(self):
        assert polycone.dual(polycone.from_inequalities([], 2)).is_zero()

    def test_edge_of_line(self):
        c = polycone.from_generators([[1, 1], [-1, -1]], 2)
        assert polycone.edge(c) == span([[1, 1]], 2)

    def test_intersect(self):
        c = polycone.from_inequalities([[1, 0]], 2)
        d = polycone.from_inequalities([[0, 1]], 2)
        both = polycone.intersect(c, d)
        assert _ints(both.generators) == [[-1, 0], [0, -1]]
        assert polycone.contains(c, both) and polycone.contains(d, both)

    def test_contains_and_equals(self):
        quadrant = polycone.from_generators([[-1, 0], [0, -1]], 2)
        ray = polycone.from_generators([[-1, -1]], 2)
        assert polycone.contains(quadrant, ray)
        assert not polycone.contains(ray, quadrant)
        assert polycone.equals(quadrant, polycone.from_inequalities([[1, 0], [0, 1]], 2))

    def test_polyhedron_view(self):
        half = polycone.polyhedron(polycone.from_inequalities([[1, 0]], 2))
        assert half.space_dimension() == 2
        assert half.affine_dimension() == 2
        assert not half.is_universe()
        zero = polycone.polyhedron(polycone.from_generators([], 3))
        assert zero.affine_dimension() == 0

    def test_linear_image(self):
        chamber = polycone.from_inequalities([[2]], 1)
        image = polycone.linear_image(chamber, Matrix.from_rows([[1], [-1]]))
        assert _ints(image.generators) == [[-1, 1]]

    def test_interior_point(self):
        point, full = polycone.interior_point(polycone.from_inequalities([[1, 0], [0, 1]], 2))
        assert full
        assert point == (F(-1), F(-1))
        point, full = polycone.interior_point(polycone.from_generators([], 2))
        assert point is None and not full


@pytest.mark.unit
class TestFourierMotzkin:
    """Test the elimination oracle on its own."""

    def test_eliminate_pair(self):
        # x <= 1, -x <= 0, y - x <= 0
        rows = [((F(1), F(0)), F(1)), ((F(-1), F(0)), F(0)), ((F(-1), F(1)), F(0))]
        projected = eliminate(rows, 0)
        assert all(coeffs[0] == 0 for coeffs, _ in projected)

    def test_hull_contains(self):
        gens = [[1, 0], [1, 1]]
        assert hull_contains(gens, [2, 1])
        assert not hull_contains(gens, [0, 1])
        assert hull_contains([], [0, 0])
        assert not hull_contains([], [1, 0])


@pytest.mark.slow
class TestConversionFuzz:
    """ppl conversions agree with Fourier-Motzkin on fuzzed cones."""

    def test_membership_agreement(self):
        rng = np.random.default_rng(2024)
        for _ in range(500):
            dim = int(rng.integers(1, 5))
            gens = _random_vectors(rng, int(rng.integers(0, 6)), dim)
            c = polycone.from_generators(gens, dim)
            for point in _random_vectors(rng, 3, dim) + gens:
                assert (tuple(F(x) for x in point) in c) == hull_contains(gens, point)

    def test_roundtrip_descriptions(self):
        rng = np.random.default_rng(99)
        for _ in range(200):
            dim = int(rng.integers(1, 5))
            ineqs = _random_vectors(rng, int(rng.integers(0, 6)), dim)
            c = polycone.from_inequalities(ineqs, dim)
            assert polycone.from_generators(c.generators, dim) == c
            for g in c.generators:
                assert all(sum(a * x for a, x in zip(row, g)) <= 0 for row in ineqs)

    def test_edge_is_equality_kernel(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            dim = int(rng.integers(1, 5))
            c = polycone.from_generators(_random_vectors(rng, int(rng.integers(0, 6)), dim), dim)
            e = polycone.edge(c)
            for v in e.basis:
                assert v in c and tuple(-x for x in v) in c
