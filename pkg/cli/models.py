"""
Command Line Models
The space built from a description, the analysis report, catalog results and
the polar decomposition summary
"""

from dataclasses import dataclass
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from exactalg import Subspace
from liecore.families import NamedAlgebra
from liecore.models import LieAlgebraRealization, RootDatum


@dataclass(frozen=True, eq=False)
class BuiltSpace:
    """Exact objects described by a SpaceDescription, before any analysis"""

    g: LieAlgebraRealization
    h: Subspace
    rd0: RootDatum
    label: str
    named: Optional[NamedAlgebra] = None


class ConeLists(BaseModel):
    generators: List[List[int]]
    inequalities: List[List[int]]


class AnalysisReport(BaseModel):
    """
    Structural invariants of one spherical space

    Covectors are value lists on the echelon basis of a (roots) or of a_Z
    (monoid generators, cones), rationals written as strings.
    """

    name: str
    algebra: str
    positive_system: List[List[str]]
    simple_roots: List[List[str]]
    adapted_subset: List[int]
    a_Z_basis: List[List[str]]
    dims: Dict[str, int]
    rank: int
    monoid_generators: List[List[str]]
    cone: ConeLists
    oracle_cone: ConeLists
    oracle_support: List[List[str]]
    edge_dim: int
    sharp: bool
    wavefront: bool
    chamber_contained: bool
    edge_contains_a_tilde: bool
    compact_quotient: bool
    h_lim_is_h: bool
    oracle_agrees: bool
    grasslimit: Optional[Dict[str, object]] = None
    timing: Dict[str, float] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        numeric_ok = self.grasslimit is None or bool(self.grasslimit.get("passed"))
        return self.oracle_agrees and numeric_ok

    def comparable(self) -> dict:
        """Every field except timing"""
        return self.model_dump(exclude={"timing"})


def _covectors(rows: List[List[str]]) -> str:
    if not rows:
        return "(none)"
    return ", ".join("(" + ", ".join(r) + ")" for r in rows)


def render_text(report: AnalysisReport) -> str:
    lines = [
        f"space: {report.name} in {report.algebra}",
        f"positive system: {_covectors(report.positive_system)}",
        f"simple roots: {_covectors(report.simple_roots)}",
        f"adapted subset S: {report.adapted_subset}",
        "dims: " + ", ".join(f"{k}={v}" for k, v in report.dims.items()),
        f"rank: {report.rank}",
        f"monoid generators: {_covectors(report.monoid_generators)}",
        f"cone generators: {report.cone.generators}",
        f"cone inequalities: {report.cone.inequalities}",
        f"edge dim: {report.edge_dim}",
        f"sharp: {report.sharp}",
        f"wavefront: {report.wavefront}",
        f"chamber image contained: {report.chamber_contained}",
        f"a~_h in edge: {report.edge_contains_a_tilde}",
        f"N(H)/H compact: {report.compact_quotient}",
        f"h_lim = h: {report.h_lim_is_h}",
        f"oracle agrees: {report.oracle_agrees}",
    ]
    if report.grasslimit is None:
        lines.append("grassmannian check: skipped")
    else:
        g = report.grasslimit
        lines.append(
            "grassmannian check: "
            f"{g['interior_converged']}/{g['interior_samples']} interior converged, "
            f"{g['exterior_diverged']}/{g['exterior_samples']} exterior diverged, "
            f"passed {g['passed']}"
        )
    if report.timing:
        lines.append(f"elapsed: {sum(report.timing.values()):.3f}s")
    return "\n".join(lines)


class DiffEntry(BaseModel):
    field: str
    expected: object
    actual: object


class CatalogResult(BaseModel):
    name: str
    passed: bool
    diff: List[DiffEntry] = Field(default_factory=list)
    error: Optional[str] = None
    report: Optional[AnalysisReport] = None


class PolarDecomposition(BaseModel):
    """point = R(phi) a_s w^flipped . (1, 0, 0) up to residual"""

    phi: float
    s: float
    flipped: bool
    residual: float
    decomposed: bool


class PolarSummary(BaseModel):
    samples: int
    decomposed: int
    coverage: float
    max_residual: float
    with_w: bool
