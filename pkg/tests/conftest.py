"""
Pytest configuration and shared fixtures.

Named algebras and catalog spaces are exact and immutable, so they are built
once per session.
"""

import os
import sys
from dataclasses import dataclass

import pytest

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from cli import AnalysisService, CatalogService
from cli.models import AnalysisReport
from compression import CompressionEngine
from compression.models import CompressionReport
from liecore import families
from spherical import SphericalService
from spherical.models import NormalizerData, SphericalSpace, StructureSplitting

CATALOG_NAMES = ("sl2_n", "sl2_so11", "sl2_so2", "sl2xsl2_diag", "sl3_so21")


@dataclass
class AnalyzedSpace:
    """Every exact stage of the pipeline for one catalog space"""

    z: SphericalSpace
    ss: StructureSplitting
    nd: NormalizerData
    report: CompressionReport


@pytest.fixture(scope="session")
def sl2():
    return families.sl(2)


@pytest.fixture(scope="session")
def sl3():
    return families.sl(3)


@pytest.fixture(scope="session")
def sl2xsl2(sl2):
    return families.product(sl2, sl2)


@pytest.fixture(scope="session")
def spherical_service():
    return SphericalService()


@pytest.fixture(scope="session")
def compression_engine(spherical_service):
    return CompressionEngine(spherical=spherical_service)


@pytest.fixture(scope="session")
def catalog():
    return CatalogService()


@pytest.fixture(scope="session")
def analysis():
    return AnalysisService()


@pytest.fixture(scope="session")
def analyzed(catalog, analysis, spherical_service, compression_engine):
    """name -> AnalyzedSpace for every catalog entry"""
    out = {}
    for name in CATALOG_NAMES:
        built = analysis.build(catalog.load(name))
        z = spherical_service.find_open_parabolic(built.g, built.h, built.rd0, label=name)
        ss = spherical_service.adapted_parabolic(z)
        nd = spherical_service.normalizer(z)
        report = compression_engine.compression_cone(z, ss, nd)
        out[name] = AnalyzedSpace(z=z, ss=ss, nd=nd, report=report)
    return out


@pytest.fixture(scope="session")
def exact_reports(catalog, analysis) -> dict:
    """name -> AnalysisReport without the Grassmannian check"""
    reports = {}
    for name in CATALOG_NAMES:
        report: AnalysisReport = analysis.analyze(catalog.load(name), skip_numeric=True)
        reports[name] = report
    return reports
