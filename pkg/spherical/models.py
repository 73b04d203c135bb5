"""
Spherical Space Models
The space z = (g, h) with its open parabolic, the local structure splitting
attached to the adapted parabolic, and the normalizer data
"""

from dataclasses import dataclass
from typing import Tuple

from exactalg import Matrix, Subspace, intersect
from liecore.models import LieAlgebraRealization, ParabolicData, RootDatum


@dataclass(frozen=True, eq=False)
class SphericalSpace:
    """h in g with a positive system whose minimal parabolic p satisfies p + h = g"""

    g: LieAlgebraRealization
    h: Subspace
    rd: RootDatum
    p: Subspace
    label: str = ""

    @property
    def p_cap_h(self) -> Subspace:
        return intersect(self.p, self.h)

    def __repr__(self):
        return f"<SphericalSpace {self.label or self.g.label} dim h={self.h.dim}>"


@dataclass(frozen=True, eq=False)
class StructureSplitting:
    """
    Pieces of the local structure theorem for the adapted parabolic Q = LU.

    h + a_Z + m_Z + u is a direct sum filling g; a_h and a_Z split the
    noncompact center of l orthogonally.
    """

    Q: ParabolicData
    adapted_subset: Tuple[int, ...]
    h_cap_l: Subspace
    a_h: Subspace
    a_Z: Subspace
    m_h: Subspace
    m_Z: Subspace
    d: Subspace
    d_H: Subspace
    d_H_perp: Subspace
    a_Z_projection: Matrix

    @property
    def m_Z_dim(self) -> int:
        return self.m_Z.dim

    @property
    def rank(self) -> int:
        return self.a_Z.dim


@dataclass(frozen=True, eq=False)
class NormalizerData:
    n_g_h: Subspace
    a_tilde_h: Subspace

    @property
    def compact_quotient_flag(self) -> bool:
        return self.a_tilde_h.is_zero()
