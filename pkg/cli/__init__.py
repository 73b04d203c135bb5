"""
Analysis Services
Builds spaces from descriptions, runs the full pipeline into an
AnalysisReport, runs the shipped catalog against its pinned values, and
witnesses the polar decomposition of the one-sheeted hyperboloid
"""

import json
import logging
import math
import os
import time
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from cli.forms import (BasisAlgebra, BasisSubalgebra, InvolutionSubalgebra,
                       ProductAlgebra, SlAlgebra, SoAlgebra, SpaceDescription,
                       SpAlgebra, parse_space)
from cli.models import (AnalysisReport, BuiltSpace, CatalogResult, ConeLists,
                        DiffEntry, PolarDecomposition, PolarSummary)
from compression import CompressionEngine
from config import Config
from errors import AnalysisError, SpaceParseError, SphericalError
from exactalg import Matrix, to_rational
from grasslimit import DegenerationService
from liecore import build_algebra, families, root_datum
from liecore.families import NamedAlgebra
from liecore.models import covector_str
from spherical import SphericalService

logger = logging.getLogger(__name__)

__all__ = [
    "AnalysisService",
    "CatalogService",
    "PolarDemoService",
]


def _matrix(rows) -> Matrix:
    return Matrix.from_rows([[to_rational(x) for x in r] for r in rows])


def _named_family(spec) -> NamedAlgebra:
    if isinstance(spec, SlAlgebra):
        return families.sl(spec.n)
    if isinstance(spec, SoAlgebra):
        return families.so(spec.p, spec.q)
    if isinstance(spec, SpAlgebra):
        return families.sp(spec.n)
    if isinstance(spec, ProductAlgebra):
        return families.product(*(_named_family(f) for f in spec.factors))
    raise SpaceParseError(f"unknown algebra family {spec!r}", location="algebra")


class AnalysisService:
    """Runs every pipeline stage on one space description"""

    def __init__(
        self,
        spherical: Optional[SphericalService] = None,
        compression: Optional[CompressionEngine] = None,
    ):
        self.spherical = spherical or SphericalService()
        self.compression = compression or CompressionEngine(spherical=self.spherical)

    @staticmethod
    def _stage(stage: str, timing: Dict[str, float], func: Callable, *args, **kwargs):
        logger.info("Stage %s", stage)
        started = time.perf_counter()
        try:
            return func(*args, **kwargs)
        except SphericalError as exc:
            if exc.stage is None:
                exc.stage = stage
            raise
        except Exception as exc:
            logger.error("Stage %s failed: %s", stage, exc)
            raise AnalysisError(f"{stage} failed: {exc}", stage=stage) from exc
        finally:
            timing[stage] = time.perf_counter() - started

    def build(self, desc: SpaceDescription) -> BuiltSpace:
        """
        Exact algebra, subalgebra and base root datum for a description

        Raises:
            SpaceParseError: "diagonal" subalgebra of a non-product algebra
            RealizationError: invalid basis, involution or subalgebra
            RootDatumError: unusable Cartan or seed
        """
        named = None
        if isinstance(desc.algebra, BasisAlgebra):
            g = build_algebra([_matrix(m) for m in desc.algebra.basis], label=desc.name)
            cartan = families.diagonal_cartan(g)
            seed = None
        else:
            named = _named_family(desc.algebra)
            g, cartan, seed = named.algebra, named.cartan, named.seed

        if desc.cartan is not None:
            cartan = families.cartan_from_matrices(g, [_matrix(m) for m in desc.cartan])
            seed = None
        if desc.seed is not None:
            seed = tuple(to_rational(x) for x in desc.seed)

        if desc.subalgebra == "diagonal":
            if named is None or not named.factors:
                raise SpaceParseError(
                    "the diagonal subalgebra needs a product algebra", location="subalgebra"
                )
            h = families.diagonal_subalgebra(named)
        elif isinstance(desc.subalgebra, InvolutionSubalgebra):
            h = families.symmetric_subalgebra(g, _matrix(desc.subalgebra.symmetric_involution))
        elif isinstance(desc.subalgebra, BasisSubalgebra):
            h = families.subalgebra_from_matrices(g, [_matrix(m) for m in desc.subalgebra.basis])
        else:
            raise SpaceParseError("unknown subalgebra form", location="subalgebra")

        rd0 = root_datum(g, cartan, seed)
        label = desc.name or (named.label if named else g.label)
        logger.info("Built %s: dim g=%s, dim h=%s, rank a=%s", label, g.dim, h.dim, rd0.rank)
        return BuiltSpace(g=g, h=h, rd0=rd0, label=label, named=named)

    def analyze(
        self,
        desc: SpaceDescription,
        skip_numeric: Optional[bool] = None,
        tmax: Optional[int] = None,
        seed: Optional[int] = None,
        samples: Optional[int] = None,
    ) -> AnalysisReport:
        """
        Open parabolic, adapted parabolic, normalizer, compression cone,
        wedge oracle and (unless skipped) the Grassmannian check

        Keyword arguments override the description's options, which override
        Config.

        Raises:
            SphericalError: the failing stage is recorded on the error; failures
                that are not SphericalError come wrapped in AnalysisError
        """
        options = desc.options
        skip_numeric = options.skip_numeric if skip_numeric is None else skip_numeric
        timing: Dict[str, float] = {}

        built = self._stage("build", timing, self.build, desc)
        z = self._stage(
            "find_open_parabolic",
            timing,
            self.spherical.find_open_parabolic,
            built.g,
            built.h,
            built.rd0,
            label=built.label,
        )
        ss = self._stage("adapted_parabolic", timing, self.spherical.adapted_parabolic, z)
        nd = self._stage("normalizer", timing, self.spherical.normalizer, z)
        report = self._stage(
            "compression_cone", timing, self.compression.compression_cone, z, ss, nd
        )

        grass = None
        if skip_numeric:
            logger.info("Grassmannian check skipped")
        else:
            service = DegenerationService(
                tmax=tmax if tmax is not None else options.tmax,
                converge_tol=options.converge_tol,
                diverge_tol=options.diverge_tol,
            )
            summary = self._stage(
                "verify_cone",
                timing,
                service.verify_cone,
                z,
                ss,
                report,
                samples=samples if samples is not None else options.samples,
                seed=seed if seed is not None else options.seed,
            )
            grass = summary.to_dict()

        rd = z.rd
        Q = ss.Q
        dims = {
            "g": z.g.dim,
            "h": z.h.dim,
            "p": z.p.dim,
            "q": Q.q.dim,
            "l": Q.l.dim,
            "u": Q.u.dim,
            "l_n": Q.l_n.dim,
            "l_c": Q.l_c.dim,
            "z_l": Q.z_l.dim,
            "z_np": Q.z_l_np.dim,
            "z_cp": Q.z_l_cp.dim,
            "a_h": ss.a_h.dim,
            "a_Z": ss.a_Z.dim,
            "m_h": ss.m_h.dim,
            "m_Z": ss.m_Z_dim,
            "d_H": ss.d_H.dim,
            "h_lim": report.h_lim.dim,
            "n_g_h": nd.n_g_h.dim,
            "a_tilde_h": nd.a_tilde_h.dim,
        }
        return AnalysisReport(
            name=built.label,
            algebra=z.g.label,
            positive_system=[covector_str(r) for r in sorted(rd.positive)],
            simple_roots=[covector_str(r) for r in rd.simple],
            adapted_subset=list(ss.adapted_subset),
            a_Z_basis=[covector_str(v) for v in ss.a_Z.basis],
            dims=dims,
            rank=ss.rank,
            monoid_generators=[covector_str(m) for m in report.monoid_generators],
            cone=ConeLists(**report.cone.to_lists()),
            oracle_cone=ConeLists(**report.oracle_cone.to_lists()),
            oracle_support=[covector_str(m) for m in report.oracle_support],
            edge_dim=report.edge_dim,
            sharp=report.sharp,
            wavefront=report.wavefront,
            chamber_contained=report.chamber_contained,
            edge_contains_a_tilde=bool(report.edge_contains_a_tilde),
            compact_quotient=nd.compact_quotient_flag,
            h_lim_is_h=report.h_lim_is_h,
            oracle_agrees=report.oracle_agrees,
            grasslimit=grass,
            timing=timing,
        )


# ============================================================================
# CATALOG
# ============================================================================


def compare_fields(expected: dict, actual: dict, prefix: str = "") -> List[DiffEntry]:
    """Field-by-field differences for the keys present in `expected`"""
    diff: List[DiffEntry] = []
    for key in sorted(expected):
        field = f"{prefix}{key}"
        want = expected[key]
        if key not in actual:
            diff.append(DiffEntry(field=field, expected=want, actual=None))
        elif isinstance(want, dict) and isinstance(actual[key], dict):
            diff.extend(compare_fields(want, actual[key], prefix=f"{field}."))
        elif want != actual[key]:
            diff.append(DiffEntry(field=field, expected=want, actual=actual[key]))
    return diff


def _run_entry(catalog_dir: str, expected_dir: str, name: str, skip_numeric: bool) -> CatalogResult:
    catalog = CatalogService(catalog_dir=catalog_dir, expected_dir=expected_dir)
    try:
        report = AnalysisService().analyze(catalog.load(name), skip_numeric=skip_numeric)
    except SphericalError as exc:
        logger.error("Catalog entry %s failed at %s: %s", name, exc.stage, exc)
        return CatalogResult(name=name, passed=False, error=f"[{exc.stage}] {exc}")
    diff = compare_fields(catalog.expected(name), report.comparable())
    if diff:
        logger.warning("Catalog entry %s differs in %s fields", name, len(diff))
    return CatalogResult(name=name, passed=not diff and report.passed, diff=diff, report=report)


class CatalogService:
    """The shipped fixtures and their pinned expectations"""

    def __init__(
        self,
        catalog_dir: Optional[str] = None,
        expected_dir: Optional[str] = None,
        jobs: Optional[int] = None,
    ):
        self.catalog_dir = catalog_dir or Config.CATALOG_DIR
        self.expected_dir = expected_dir or Config.EXPECTED_DIR
        self.jobs = Config.CATALOG_JOBS if jobs is None else jobs

    def list(self) -> List[str]:
        return sorted(
            os.path.splitext(f)[0] for f in os.listdir(self.catalog_dir) if f.endswith(".json")
        )

    def _path(self, directory: str, name: str) -> str:
        if name not in self.list():
            raise SpaceParseError(f"unknown catalog entry {name!r}", location=name)
        return os.path.join(directory, f"{name}.json")

    def load(self, name: str) -> SpaceDescription:
        with open(self._path(self.catalog_dir, name), encoding="utf-8") as fh:
            return parse_space(fh.read())

    def expected(self, name: str) -> dict:
        with open(self._path(self.expected_dir, name), encoding="utf-8") as fh:
            return json.load(fh)

    def run(self, names: Optional[Sequence[str]] = None, skip_numeric: bool = False) -> List[CatalogResult]:
        """
        Analyze fixtures, concurrently when jobs > 1, and compare each with
        its pinned expectation

        Raises:
            SpaceParseError: an unknown name
        """
        names = list(names) if names else self.list()
        for name in names:
            self._path(self.catalog_dir, name)
        logger.info("Running %s catalog entries with %s jobs", len(names), self.jobs)
        results = Parallel(n_jobs=self.jobs)(
            delayed(_run_entry)(self.catalog_dir, self.expected_dir, name, skip_numeric)
            for name in names
        )
        return list(results)


# ============================================================================
# POLAR DECOMPOSITION
# ============================================================================


def _rotation(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _boost(s: float) -> np.ndarray:
    return np.array(
        [[math.cosh(s), 0.0, math.sinh(s)], [0.0, 1.0, 0.0], [math.sinh(s), 0.0, math.cosh(s)]]
    )


_BASE_POINT = np.array([1.0, 0.0, 0.0])
_FLIP = np.diag([-1.0, -1.0, 1.0])


class PolarDemoService:
    """
    SO(2,1) acting on the one-sheeted hyperboloid x^2 + y^2 - z^2 = 1 with base
    point (1, 0, 0).

    A point is written k a_s f . (1, 0, 0) with k a rotation of the (x, y)
    plane, a_s the boost in the (x, z) plane with s >= 0, and f either the
    identity or the flip w = diag(-1, -1, 1), which conjugates a_s to a_-s.
    Without w only the half z >= 0 is reached.
    """

    def __init__(self, residual_tol: Optional[float] = None):
        self.residual_tol = Config.POLAR_RESIDUAL_TOL if residual_tol is None else residual_tol

    def decompose(self, point: Sequence[float], with_w: bool = True) -> PolarDecomposition:
        x, y, z = (float(c) for c in point)
        s = math.asinh(abs(z))
        flipped = with_w and z < 0
        phi = math.atan2(y, x)
        if flipped:
            phi -= math.pi
            rebuilt = _rotation(phi) @ _boost(s) @ _FLIP @ _BASE_POINT
        else:
            rebuilt = _rotation(phi) @ _boost(s) @ _BASE_POINT
        residual = float(np.linalg.norm(rebuilt - np.array([x, y, z])))
        return PolarDecomposition(
            phi=phi,
            s=s,
            flipped=flipped,
            residual=residual,
            decomposed=residual < self.residual_tol,
        )

    @staticmethod
    def sample(rng: np.random.Generator) -> np.ndarray:
        """Point on the hyperboloid with height uniform in [-3, 3]"""
        while True:
            u, v = rng.uniform(-1.0, 1.0, size=2)
            norm = math.hypot(u, v)
            if 0.0 < norm <= 1.0:
                break
        z = rng.uniform(-3.0, 3.0)
        r = math.sqrt(1.0 + z * z)
        return np.array([r * u / norm, r * v / norm, z])

    def run(
        self,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
        with_w: bool = True,
    ) -> PolarSummary:
        samples = Config.POLAR_SAMPLES if samples is None else samples
        if samples < 1:
            raise ValueError("samples must be at least 1")
        rng = np.random.default_rng(Config.POLAR_SEED if seed is None else seed)
        decomposed = 0
        max_residual = 0.0
        for _ in range(samples):
            result = self.decompose(self.sample(rng), with_w=with_w)
            if result.decomposed:
                decomposed += 1
                max_residual = max(max_residual, result.residual)
        summary = PolarSummary(
            samples=samples,
            decomposed=decomposed,
            coverage=decomposed / samples,
            max_residual=max_residual,
            with_w=with_w,
        )
        logger.info("Polar decomposition coverage %.4f (with w: %s)", summary.coverage, with_w)
        return summary
