"""
Tests for the graph map, the compression monoid and the wedge-support oracle.
"""

from fractions import Fraction as F

import numpy as np
import pytest

import polycone
from compression import CompressionEngine, tensor_support
from errors import ExteriorPowerTooLargeError
from tests.conftest import CATALOG_NAMES


def _ints(rows):
    return [[int(x) for x in r] for r in rows]


@pytest.mark.unit
class TestGraphMap:
    """Test the lift of u_bar root vectors to h."""

    def test_so11_entry(self, analyzed, compression_engine):
        a = analyzed["sl2_so11"]
        gm = compression_engine.graph_map(a.z, a.ss)
        assert len(gm.entries) == 1
        entry = gm.entries[0]
        assert entry.alpha == (F(2),)
        assert entry.Y == (F(0), F(1), F(1))
        assert not entry.has_D
        assert entry.u_components == (((F(2),), (F(0), F(1), F(0))),)

    def test_horospherical_has_no_components(self, analyzed, compression_engine):
        a = analyzed["sl2_n"]
        gm = compression_engine.graph_map(a.z, a.ss)
        assert [e.u_components for e in gm.entries] == [()]
        assert compression_engine.monoid_generators(gm) == ()

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_entries_lie_in_h(self, analyzed, compression_engine, name):
        a = analyzed[name]
        gm = compression_engine.graph_map(a.z, a.ss)
        assert len(gm.entries) == a.ss.Q.u_bar.dim
        assert all(e.Y in a.z.h for e in gm.entries)


@pytest.mark.unit
class TestCompressionCone:
    """Test monoids, cones and verdicts against hand-computed values."""

    @pytest.mark.parametrize(
        "name, monoid",
        [
            ("sl2_so11", [[4]]),
            ("sl2_so2", [[4]]),
            ("sl2_n", []),
            ("sl2xsl2_diag", [[4]]),
            ("sl3_so21", [[-2, 4], [2, 2], [4, -2]]),
        ],
    )
    def test_monoid(self, analyzed, name, monoid):
        assert _ints(analyzed[name].report.monoid_generators) == monoid

    def test_symmetric_cone_is_negative_chamber(self, analyzed):
        cone = analyzed["sl3_so21"].report.cone
        assert _ints(cone.generators) == [[-2, -1], [-1, -2]]
        assert _ints(cone.inequalities) == [[-1, 2], [2, -1]]

    def test_horospherical_cone_is_everything(self, analyzed):
        report = analyzed["sl2_n"].report
        assert report.cone.is_full()
        assert report.edge_dim == 1
        assert not report.sharp
        assert not report.wavefront
        assert report.chamber_contained
        assert report.h_lim_is_h

    @pytest.mark.parametrize("name", ["sl2_so11", "sl2_so2", "sl2xsl2_diag", "sl3_so21"])
    def test_sharp_wavefront(self, analyzed, name):
        report = analyzed[name].report
        assert report.sharp
        assert report.wavefront
        assert not report.h_lim_is_h

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_report_invariants(self, analyzed, name):
        report = analyzed[name].report
        assert report.chamber_contained
        assert report.edge_contains_a_tilde
        assert report.oracle_agrees
        assert report.rank == analyzed[name].ss.rank
        assert polycone.edge(report.cone) == report.edge


@pytest.mark.unit
class TestPluckerOracle:
    """Test the wedge-support cross-check."""

    def test_so11_support(self, analyzed, compression_engine):
        a = analyzed["sl2_so11"]
        assert _ints(compression_engine.plucker_support(a.z, a.ss)) == [[0], [4]]

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_oracle_matches_monoid_cone(self, analyzed, compression_engine, name):
        a = analyzed[name]
        assert compression_engine.plucker_oracle(a.z, a.ss) == a.report.cone

    def test_wedge_bound(self, analyzed):
        a = analyzed["sl2_so11"]
        engine = CompressionEngine(max_wedge_terms=1)
        with pytest.raises(ExteriorPowerTooLargeError) as err:
            engine.plucker_support(a.z, a.ss)
        assert err.value.bound == 1
        assert err.value.stage == "plucker_oracle"


@pytest.mark.unit
class TestTensorSupport:
    """Test the weight support of tensor products."""

    def test_small_product(self):
        first = [(F(0),), (F(1),)]
        second = [(F(0),), (F(-2),)]
        assert _ints(tensor_support(first, second)) == [[-2], [-1], [0], [1]]

    @pytest.mark.slow
    def test_cone_is_intersection(self):
        rng = np.random.default_rng(42)
        for _ in range(500):
            dim = int(rng.integers(1, 4))
            zero = (F(0),) * dim

            def weights():
                count = int(rng.integers(0, 4))
                drawn = [tuple(F(int(x)) for x in rng.integers(-3, 4, size=dim)) for _ in range(count)]
                return [zero] + drawn

            first, second = weights(), weights()
            product = polycone.support_cone(tensor_support(first, second), dim)
            expected = polycone.intersect(
                polycone.support_cone(first, dim), polycone.support_cone(second, dim)
            )
            assert product == expected
