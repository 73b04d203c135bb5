"""
Spherical Spaces
Open parabolic search, the adapted parabolic with its local structure
splitting, the normalizer of h and the limiting subalgebra
"""

import logging
from itertools import combinations
from typing import List, Optional, Tuple

from config import Config
from errors import (AdaptedParabolicError, ConsistencyError, OpenOrbitError,
                    RealizationError)
from exactalg import (Matrix, Subspace, contains, intersect, orth_complement,
                      project, subspace_sum)
from liecore import (is_subalgebra, minimal_parabolic, normalizer,
                     standard_parabolic, weyl_twists)
from liecore.models import LieAlgebraRealization, ParabolicData, RootDatum
from spherical.models import NormalizerData, SphericalSpace, StructureSplitting

logger = logging.getLogger(__name__)

__all__ = [
    "SphericalService",
    "SphericalSpace",
    "StructureSplitting",
    "NormalizerData",
]


class SphericalService:
    """Structure theory of a real spherical space at the Lie algebra level"""

    def __init__(self, max_weyl_elements: Optional[int] = None):
        self.max_weyl_elements = (
            Config.MAX_WEYL_ELEMENTS if max_weyl_elements is None else max_weyl_elements
        )

    def find_open_parabolic(
        self, g: LieAlgebraRealization, h: Subspace, rd0: RootDatum, label: str = ""
    ) -> SphericalSpace:
        """
        First Weyl twist of rd0 whose minimal parabolic p has p + h = g

        Args:
            g: realization
            h: subalgebra of g
            rd0: root datum providing the split Cartan and the base positive system

        Returns:
            SphericalSpace

        Raises:
            RealizationError: h is not a subalgebra
            OpenOrbitError: no twist gives an open orbit through the base point
        """
        if not is_subalgebra(g, h):
            raise RealizationError("h is not closed under the bracket", stage="find_open_parabolic")

        for index, rd in enumerate(weyl_twists(rd0, self.max_weyl_elements)):
            p = minimal_parabolic(rd)
            if subspace_sum(p, h).is_full():
                logger.info(
                    "Open parabolic found at twist %s: dim p=%s, dim p^h=%s",
                    index,
                    p.dim,
                    intersect(p, h).dim,
                )
                return SphericalSpace(g=g, h=h, rd=rd, p=p, label=label or g.label)
            logger.debug("Twist %s fails: dim(p + h)=%s", index, subspace_sum(p, h).dim)

        raise OpenOrbitError(
            "no open P-orbit through base point; conjugate h and retry",
            stage="find_open_parabolic",
        )

    def _passes(self, z: SphericalSpace, Q: ParabolicData) -> bool:
        q_cap_h = intersect(Q.q, z.h)
        return (
            contains(Q.l, q_cap_h)
            and contains(q_cap_h, Q.l_n)
            and subspace_sum(z.p, q_cap_h) == Q.q
        )

    def adapted_parabolic(self, z: SphericalSpace) -> StructureSplitting:
        """
        The unique standard parabolic Q with l_n in q^h in l and q = p + q^h,
        together with its splitting data

        Raises:
            AdaptedParabolicError: zero or several subsets pass
            ConsistencyError: the direct sum h + a_Z + m_Z + u does not fill g
        """
        rd = z.rd
        g = z.g
        passing: List[Tuple[Tuple[int, ...], ParabolicData]] = []
        indices = range(len(rd.simple))
        for size in range(len(rd.simple) + 1):
            for subset in combinations(indices, size):
                Q = standard_parabolic(rd, subset)
                if self._passes(z, Q):
                    passing.append((subset, Q))
                else:
                    logger.debug("Subset %s is not adapted", subset)
        if len(passing) != 1:
            raise AdaptedParabolicError(
                "adapted parabolic not unique - input violates real-sphericality "
                f"assumptions (passing subsets: {[list(s) for s, _ in passing]})",
                passing=[s for s, _ in passing],
            )
        subset, Q = passing[0]

        h_cap_l = intersect(z.h, Q.l)
        z_np = Q.z_l_np
        a_h = self._orthogonal_image(g, h_cap_l, z_np)
        a_Z = intersect(orth_complement(a_h, g.gram), z_np)

        compact_part = subspace_sum(Q.z_l_cp, Q.l_c)
        m_h = self._orthogonal_image(g, h_cap_l, compact_part)
        m_Z = intersect(orth_complement(m_h, g.gram), compact_part)

        d = subspace_sum(Q.z_l, Q.l_c)
        d_H = intersect(d, z.h)
        d_H_perp = intersect(orth_complement(d_H, g.gram), d)

        total = z.h.dim + a_Z.dim + m_Z.dim + Q.u.dim
        filled = subspace_sum(subspace_sum(z.h, a_Z), subspace_sum(m_Z, Q.u))
        if total != g.dim or not filled.is_full():
            raise ConsistencyError(
                f"h + a_Z + m_Z + u is not a direct sum filling g "
                f"({z.h.dim} + {a_Z.dim} + {m_Z.dim} + {Q.u.dim} vs {g.dim})",
                stage="adapted_parabolic",
            )

        splitting = StructureSplitting(
            Q=Q,
            adapted_subset=subset,
            h_cap_l=h_cap_l,
            a_h=a_h,
            a_Z=a_Z,
            m_h=m_h,
            m_Z=m_Z,
            d=d,
            d_H=d_H,
            d_H_perp=d_H_perp,
            a_Z_projection=self._a_Z_projection(z, a_Z),
        )
        logger.info(
            "Adapted parabolic S=%s: rank %s, dim a_h=%s, dim m_Z=%s",
            list(subset),
            splitting.rank,
            a_h.dim,
            m_Z.dim,
        )
        return splitting

    @staticmethod
    def _orthogonal_image(g: LieAlgebraRealization, source: Subspace, target: Subspace) -> Subspace:
        along = orth_complement(target, g.gram)
        return Subspace.spanned_by(
            [project(x, target, along) for x in source.basis], g.dim
        )

    @staticmethod
    def _a_Z_projection(z: SphericalSpace, a_Z: Subspace) -> Matrix:
        """Orthogonal projection a -> a_Z in coordinates of the echelon bases"""
        along = orth_complement(a_Z, z.g.gram)
        columns = [
            a_Z.coordinates(project(x, a_Z, along)) for x in z.rd.a_basis.basis
        ]
        return Matrix.from_columns(columns, a_Z.dim)

    def normalizer(self, z: SphericalSpace) -> NormalizerData:
        """
        n_g(h) and the split part a~_h of its complement to h

        a~_h is the projection to a, along m, of the orthocomplement of
        h ^ (m + a) inside n_g(h) ^ (m + a).
        """
        g = z.g
        n = normalizer(g, z.h)
        if not contains(n, z.h) or not is_subalgebra(g, n):
            raise ConsistencyError("normalizer lost h or is not a subalgebra", stage="normalizer")
        zero = z.rd.zero_space
        n_zero = intersect(n, zero)
        h_zero = intersect(z.h, zero)
        complement = intersect(orth_complement(h_zero, g.gram), n_zero)
        along = subspace_sum(z.rd.m_space, orth_complement(zero, g.gram))
        a_tilde_h = Subspace.spanned_by(
            [project(x, z.rd.a_basis, along) for x in complement.basis], g.dim
        )
        logger.info("Normalizer: dim n_g(h)=%s, dim a~_h=%s", n.dim, a_tilde_h.dim)
        return NormalizerData(n_g_h=n, a_tilde_h=a_tilde_h)

    def limiting_subalgebra(self, z: SphericalSpace, ss: StructureSplitting) -> Subspace:
        """
        h_lim = u_bar + (l ^ h)

        Raises:
            ConsistencyError: h_lim is not a subalgebra or dim h_lim != dim h
        """
        h_lim = subspace_sum(ss.Q.u_bar, ss.h_cap_l)
        if h_lim.dim != z.h.dim:
            raise ConsistencyError(
                f"dim h_lim = {h_lim.dim} differs from dim h = {z.h.dim}",
                stage="limiting_subalgebra",
            )
        if not is_subalgebra(z.g, h_lim):
            raise ConsistencyError("h_lim is not a subalgebra", stage="limiting_subalgebra")
        if h_lim == z.h:
            logger.info("h_lim equals h: the degeneration is trivial")
        return h_lim
