"""
Tests for the space description format, the analysis service, the polar
decomposition demo and the command line surface.
"""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from app import create_app
from cli import AnalysisService, PolarDemoService
from cli.forms import SpaceDescription, emit_space, parse_space
from errors import (AnalysisError, ConsistencyError, OpenOrbitError,
                    SpaceParseError)
from tests.conftest import CATALOG_NAMES

SL2_CARTAN_H = {
    "name": "sl2_cartan",
    "algebra": {"family": "sl", "n": 2},
    "subalgebra": {"basis": [[["1", "0"], ["0", "-1"]]]},
}


def _text(payload: dict) -> str:
    return json.dumps(payload)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def space_file(tmp_path, catalog):
    """Write a catalog entry or a raw payload to a temporary file"""

    def write(source) -> str:
        path = tmp_path / "space.json"
        if isinstance(source, str):
            path.write_text(emit_space(catalog.load(source)), encoding="utf-8")
        else:
            path.write_text(_text(source), encoding="utf-8")
        return str(path)

    return write


@pytest.mark.unit
class TestSpaceFormat:
    """Test parsing and emitting space descriptions."""

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_emit_then_parse(self, catalog, name):
        desc = catalog.load(name)
        assert parse_space(emit_space(desc)) == desc

    def test_rationals_canonical(self):
        desc = parse_space(
            _text(
                {
                    "algebra": {"family": "sl", "n": 2},
                    "subalgebra": {"symmetric_involution": [[1, "0"], ["0/5", "-2/2"]]},
                }
            )
        )
        assert desc.subalgebra.symmetric_involution == [["1", "0"], ["0", "-1"]]

    def test_product_algebra(self):
        desc = parse_space(
            _text(
                {
                    "algebra": {
                        "family": "product",
                        "factors": [{"family": "sl", "n": 2}, {"family": "so", "p": 2, "q": 1}],
                    },
                    "subalgebra": "diagonal",
                }
            )
        )
        assert desc.algebra.matrix_size == 5
        assert desc.subalgebra == "diagonal"

    def test_zero_denominator(self):
        payload = dict(SL2_CARTAN_H, subalgebra={"basis": [[["1/0", "0"], ["0", "-1"]]]})
        with pytest.raises(SpaceParseError) as err:
            parse_space(_text(payload))
        assert "zero denominator" in str(err.value)
        assert err.value.location == "subalgebra.basis[0][0][0]"
        assert err.value.stage == "parse"

    def test_float_rejected(self):
        payload = dict(SL2_CARTAN_H, subalgebra={"basis": [[[0.5, "0"], ["0", "-1"]]]})
        with pytest.raises(SpaceParseError) as err:
            parse_space(_text(payload))
        assert "not exact" in str(err.value)

    def test_non_square(self):
        payload = dict(SL2_CARTAN_H, subalgebra={"basis": [[["1", "0", "0"], ["0", "-1", "0"]]]})
        with pytest.raises(SpaceParseError) as err:
            parse_space(_text(payload))
        assert "square" in str(err.value)

    def test_size_mismatch(self):
        payload = dict(SL2_CARTAN_H, algebra={"family": "sl", "n": 3})
        with pytest.raises(SpaceParseError) as err:
            parse_space(_text(payload))
        assert "subalgebra.basis.0" in str(err.value)

    def test_unknown_family_and_extra_keys(self):
        with pytest.raises(SpaceParseError):
            parse_space(_text(dict(SL2_CARTAN_H, algebra={"family": "su", "n": 2})))
        with pytest.raises(SpaceParseError):
            parse_space(_text(dict(SL2_CARTAN_H, colour="blue")))

    def test_malformed_json(self):
        with pytest.raises(SpaceParseError):
            parse_space("{not json")


@pytest.mark.unit
class TestAnalysisService:
    """Test building and analyzing described spaces."""

    def test_build_horospherical(self, catalog, analysis):
        built = analysis.build(catalog.load("sl2_n"))
        assert built.g.dim == 3
        assert built.h.dim == 1
        assert built.label == "sl2_n"

    def test_build_diagonal_needs_product(self, analysis):
        desc = SpaceDescription.model_validate(dict(SL2_CARTAN_H, subalgebra="diagonal"))
        with pytest.raises(SpaceParseError) as err:
            analysis.build(desc)
        assert err.value.location == "subalgebra"

    def test_explicit_basis_algebra(self, analysis):
        desc = parse_space(
            _text(
                {
                    "name": "sl2_by_hand",
                    "algebra": {
                        "basis": [
                            [["1", "0"], ["0", "-1"]],
                            [["0", "1"], ["0", "0"]],
                            [["0", "0"], ["1", "0"]],
                        ]
                    },
                    "subalgebra": {"basis": [[["0", "1"], ["0", "0"]]]},
                }
            )
        )
        report = analysis.analyze(desc, skip_numeric=True)
        assert report.rank == 1
        assert report.edge_dim == 1

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_reports_match_pins(self, catalog, exact_reports, name):
        expected = catalog.expected(name)
        actual = exact_reports[name].comparable()
        assert {k: actual[k] for k in expected} == expected

    def test_report_passes_without_numeric(self, exact_reports):
        report = exact_reports["sl3_so21"]
        assert report.grasslimit is None
        assert report.passed
        assert set(report.timing) == {
            "build",
            "find_open_parabolic",
            "adapted_parabolic",
            "normalizer",
            "compression_cone",
        }

    def test_file_options_apply(self, catalog, analysis):
        payload = json.loads(emit_space(catalog.load("sl2_so11")))
        payload["options"] = {"skip_numeric": True}
        assert analysis.analyze(parse_space(_text(payload))).grasslimit is None

    def test_no_open_orbit_stage(self, analysis):
        with pytest.raises(OpenOrbitError) as err:
            analysis.analyze(parse_space(_text(SL2_CARTAN_H)), skip_numeric=True)
        assert err.value.stage == "find_open_parabolic"

    def test_unexpected_failure_wrapped(self, catalog, mocker):
        service = AnalysisService()
        mocker.patch.object(service.spherical, "normalizer", side_effect=RuntimeError("boom"))
        with pytest.raises(AnalysisError) as err:
            service.analyze(catalog.load("sl2_so11"), skip_numeric=True)
        assert err.value.stage == "normalizer"
        assert isinstance(err.value.__cause__, RuntimeError)

    @pytest.mark.slow
    def test_numeric_check_runs(self, catalog, analysis):
        report = analysis.analyze(catalog.load("sl2_so11"), samples=1, tmax=40)
        assert report.grasslimit["passed"] is True
        assert report.passed


@pytest.mark.unit
class TestPolarDemo:
    """Test the polar decomposition of the one-sheeted hyperboloid."""

    def test_upper_point(self):
        result = PolarDemoService().decompose([np.cosh(1.0), 0.0, np.sinh(1.0)])
        assert result.decomposed
        assert not result.flipped
        assert result.s == pytest.approx(1.0)
        assert result.phi == pytest.approx(0.0)

    def test_lower_point_needs_flip(self):
        point = [0.0, np.cosh(2.0), -np.sinh(2.0)]
        assert PolarDemoService().decompose(point).flipped
        assert PolarDemoService().decompose(point).decomposed
        assert not PolarDemoService().decompose(point, with_w=False).decomposed

    def test_samples_on_hyperboloid(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            x, y, z = PolarDemoService.sample(rng)
            assert x * x + y * y - z * z == pytest.approx(1.0)

    def test_full_coverage_with_flip(self):
        summary = PolarDemoService().run(samples=2000, seed=0)
        assert summary.coverage == 1.0
        assert summary.max_residual < 1e-9

    def test_half_coverage_without_flip(self):
        summary = PolarDemoService().run(samples=2000, seed=0, with_w=False)
        assert 0.4 < summary.coverage < 0.6

    def test_needs_samples(self):
        with pytest.raises(ValueError):
            PolarDemoService().run(samples=0)


@pytest.mark.integration
class TestCommandLine:
    """Test commands, output formats and exit codes."""

    def test_analyze_structured(self, runner, space_file):
        path = space_file("sl2_so11")
        result = runner.invoke(
            create_app(), ["--log-level", "ERROR", "analyze", path, "--format", "structured", "--skip-numeric"]
        )
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["cone"]["generators"] == [[-1]]
        assert payload["grasslimit"] is None

    def test_analyze_text(self, runner, space_file):
        result = runner.invoke(
            create_app(), ["--log-level", "ERROR", "analyze", space_file("sl2_n"), "--skip-numeric"]
        )
        assert result.exit_code == 0
        assert "edge dim: 1" in result.stdout
        assert "grassmannian check: skipped" in result.stdout

    def test_analyze_input_error(self, runner, space_file):
        path = space_file(dict(SL2_CARTAN_H, seed=[0.5]))
        result = runner.invoke(create_app(), ["--log-level", "ERROR", "analyze", path])
        assert result.exit_code == 2
        assert "error [parse]" in result.stderr

    def test_analyze_binary_file(self, runner, tmp_path):
        path = tmp_path / "space.json"
        path.write_bytes(b"\xff\xfe{")
        result = runner.invoke(create_app(), ["--log-level", "ERROR", "analyze", str(path)])
        assert result.exit_code == 2
        assert "error [parse]: not UTF-8 text at byte 0" in result.stderr

    def test_analyze_no_open_orbit(self, runner, space_file):
        result = runner.invoke(
            create_app(), ["--log-level", "ERROR", "analyze", space_file(SL2_CARTAN_H), "--skip-numeric"]
        )
        assert result.exit_code == 2
        assert "find_open_parabolic" in result.stderr

    def test_analyze_internal_inconsistency(self, runner, space_file, mocker):
        mocker.patch(
            "cli.routes.AnalysisService.analyze",
            side_effect=ConsistencyError("graph map reassembly failed", stage="graph_map"),
        )
        result = runner.invoke(create_app(), ["--log-level", "ERROR", "analyze", space_file("sl2_n")])
        assert result.exit_code == 1

    def test_analyze_oracle_mismatch(self, runner, space_file, exact_reports, mocker):
        broken = exact_reports["sl2_so11"].model_copy(update={"oracle_agrees": False})
        mocker.patch("cli.routes.AnalysisService.analyze", return_value=broken)
        result = runner.invoke(create_app(), ["--log-level", "ERROR", "analyze", space_file("sl2_so11")])
        assert result.exit_code == 1
        assert "oracle agrees: False" in result.stdout

    def test_demo_polar(self, runner):
        result = runner.invoke(create_app(), ["--log-level", "ERROR", "demo-polar", "--samples", "500"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["coverage"] == 1.0

    def test_demo_polar_without_flip(self, runner):
        result = runner.invoke(
            create_app(), ["--log-level", "ERROR", "demo-polar", "--samples", "500", "--no-flip"]
        )
        assert result.exit_code == 0
        assert json.loads(result.stdout)["coverage"] < 1.0

    def test_catalog_list(self, runner):
        result = runner.invoke(create_app(), ["--log-level", "ERROR", "catalog", "list"])
        assert result.exit_code == 0
        assert result.stdout.split() == list(CATALOG_NAMES)

    def test_catalog_unknown_name(self, runner):
        result = runner.invoke(
            create_app(), ["--log-level", "ERROR", "catalog", "run", "sl7_nothing", "--skip-numeric"]
        )
        assert result.exit_code == 2
