"""
Compression Cones
Reads the monoid of compression weights off the graph map of h over u_bar,
builds the compression cone with its edge and wavefront verdict, and
cross-checks it against the weight support of the wedge of h
"""

import logging
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Set, Tuple

import polycone
from compression.models import CompressionReport, GraphMapData, GraphMapEntry
from config import Config
from errors import ConsistencyError, ExteriorPowerTooLargeError
from exactalg import (Matrix, Vector, is_zero_vector, project, rank, solve,
                      subspace_sum, vec_add, zero_vector)
from liecore import weight_basis
from liecore.models import Covector
from polycone.models import Cone
from spherical import SphericalService
from spherical.models import NormalizerData, SphericalSpace, StructureSplitting

logger = logging.getLogger(__name__)

__all__ = [
    "CompressionEngine",
    "CompressionReport",
    "GraphMapData",
    "GraphMapEntry",
    "tensor_support",
]


def _negate(root: Covector) -> Covector:
    return tuple(-x for x in root)


def tensor_support(first: Sequence[Covector], second: Sequence[Covector]) -> Tuple[Covector, ...]:
    """
    Weight support of a tensor product of two weight vectors

    For supports containing 0 the support cone of the result is the
    intersection of the two support cones.
    """
    return tuple(sorted({vec_add(a, b) for a in first for b in second}))


class CompressionEngine:
    """Compression cone of a spherical space and its independent oracle"""

    def __init__(self, max_wedge_terms: Optional[int] = None, spherical: SphericalService = None):
        self.max_wedge_terms = (
            Config.MAX_WEDGE_TERMS if max_wedge_terms is None else max_wedge_terms
        )
        self.spherical = spherical or SphericalService()

    # ------------------------------------------------------------------ graph map

    @staticmethod
    def _restrictions(z: SphericalSpace, ss: StructureSplitting) -> Dict[Covector, Covector]:
        rd = z.rd
        out = {r: rd.restrict(r, ss.a_Z) for r in rd.roots}
        out[(Fraction(0),) * rd.rank] = zero_vector(ss.rank)
        return out

    def graph_map(self, z: SphericalSpace, ss: StructureSplitting) -> GraphMapData:
        """
        For each root vector X_-alpha of u_bar, the element Y of h whose
        u_bar-component is X_-alpha, split into D_alpha and the X_beta

        Raises:
            ConsistencyError: some X_-alpha has no lift to h
        """
        g, rd, Q = z.g, z.rd, ss.Q
        wb = weight_basis(rd)
        u_roots = set(Q.u_roots)
        u_bar_roots = {_negate(r) for r in u_roots}
        u_bar_idx = wb.indices(u_bar_roots)
        h_rows = [wb.expand(hb) for hb in z.h.basis]
        system = Matrix.from_rows(
            [[hw[i] for hw in h_rows] for i in u_bar_idx], len(h_rows)
        )
        along = subspace_sum(
            subspace_sum(ss.d_H, Q.l_n), subspace_sum(Q.u, Q.u_bar)
        )

        def part(coords: Vector, indices: Sequence[int]) -> Vector:
            out = zero_vector(g.dim)
            for i in indices:
                if coords[i] != 0:
                    out = tuple(a + coords[i] * b for a, b in zip(out, wb.vectors[i]))
            return out

        l_idx = wb.indices(set(Q.levi_roots) | {(Fraction(0),) * rd.rank})
        entries: List[GraphMapEntry] = []
        for alpha in sorted(u_roots):
            for k, x in enumerate(rd.root_spaces[_negate(alpha)].basis):
                target = wb.expand(x)
                coeffs = solve(system, [target[i] for i in u_bar_idx])
                if coeffs is None:
                    raise ConsistencyError(
                        f"local structure violated: no element of h over root vector {k} "
                        f"of -{[str(v) for v in alpha]}",
                        stage="graph_map",
                    )
                y = z.h.combine(coeffs)
                yw = wb.expand(y)
                y_l = part(yw, l_idx)
                u_components = []
                assembled = vec_add(part(yw, u_bar_idx), y_l)
                for beta in sorted(u_roots):
                    x_beta = part(yw, wb.indices({beta}))
                    assembled = vec_add(assembled, x_beta)
                    if not is_zero_vector(x_beta):
                        u_components.append((beta, x_beta))
                if part(yw, u_bar_idx) != x or assembled != y:
                    raise ConsistencyError("graph map reassembly failed", stage="graph_map")
                entries.append(
                    GraphMapEntry(
                        alpha=alpha,
                        basis_vector_index=k,
                        Y=y,
                        D_alpha=project(y_l, ss.d_H_perp, along),
                        u_components=tuple(u_components),
                    )
                )
        logger.debug("Graph map: %s entries", len(entries))
        return GraphMapData(entries=tuple(entries), restrictions=self._restrictions(z, ss))

    @staticmethod
    def monoid_generators(gm: GraphMapData) -> Tuple[Covector, ...]:
        """alpha restricted to a_Z when D_alpha != 0, alpha + beta when X_beta != 0"""
        found: Set[Covector] = set()
        for entry in gm.entries:
            if entry.has_D:
                found.add(gm.restrict(entry.alpha))
            for beta, _ in entry.u_components:
                found.add(vec_add(gm.restrict(entry.alpha), gm.restrict(beta)))
        return tuple(sorted(m for m in found if not is_zero_vector(m)))

    # ------------------------------------------------------------------ oracle

    def plucker_support(self, z: SphericalSpace, ss: StructureSplitting) -> Tuple[Covector, ...]:
        """
        Weights of the wedge of h relative to the weight of the h_lim wedge,
        restricted to a_Z

        Raises:
            ExteriorPowerTooLargeError: more wedge monomials than the bound
            ConsistencyError: the h_lim weight is missing or a weight leaves
                the cone spanned by the roots of u
        """
        rd = z.rd
        wb = weight_basis(rd)
        restrictions = self._restrictions(z, ss)
        d = z.h.dim
        rows = [wb.expand(hb) for hb in z.h.basis]
        columns = [j for j in range(len(wb.vectors)) if any(r[j] != 0 for r in rows)]
        terms = comb(len(columns), d)
        if terms > self.max_wedge_terms:
            raise ExteriorPowerTooLargeError(
                f"wedge of h has {terms} candidate monomials, bound is {self.max_wedge_terms}",
                bound=self.max_wedge_terms,
            )
        weight_of = {j: restrictions[wb.weights[j]] for j in columns}

        support: Set[Covector] = set()
        for subset in combinations(columns, d):
            mu = zero_vector(ss.rank)
            for j in subset:
                mu = vec_add(mu, weight_of[j])
            if mu in support:
                continue
            minor = Matrix.from_rows([[r[j] for j in subset] for r in rows], d)
            if rank(minor) == d:
                support.add(mu)

        mu_0 = zero_vector(ss.rank)
        for beta, mult in ss.Q.sigma_u:
            mu_0 = tuple(m - mult * b for m, b in zip(mu_0, restrictions[beta]))
        if mu_0 not in support:
            raise ConsistencyError("limiting wedge vanished", stage="plucker_oracle")

        shifted = sorted({tuple(a - b for a, b in zip(mu, mu_0)) for mu in support})
        u_cone = polycone.from_generators([restrictions[b] for b in ss.Q.u_roots], ss.rank)
        for nu in shifted:
            if nu not in u_cone:
                raise ConsistencyError(
                    f"wedge weight {[str(v) for v in nu]} is not a sum of roots of u",
                    stage="plucker_oracle",
                )
        logger.debug("Plucker support: %s weights from %s monomials", len(shifted), terms)
        return tuple(shifted)

    def plucker_oracle(self, z: SphericalSpace, ss: StructureSplitting) -> Cone:
        return polycone.support_cone(self.plucker_support(z, ss), ss.rank)

    # ------------------------------------------------------------------ report

    def compression_cone(
        self,
        z: SphericalSpace,
        ss: StructureSplitting,
        normalizer_data: Optional[NormalizerData] = None,
    ) -> CompressionReport:
        """
        Compression cone from the monoid, its edge, the wavefront verdict and
        the oracle comparison
        """
        rd = z.rd
        monoid = self.monoid_generators(self.graph_map(z, ss))
        cone = polycone.from_inequalities(monoid, ss.rank)
        edge = polycone.edge(cone)

        chamber = polycone.from_inequalities(rd.simple, rd.rank)
        image = polycone.linear_image(chamber, ss.a_Z_projection)

        edge_contains_a_tilde = None
        if normalizer_data is not None:
            edge_contains_a_tilde = all(
                ss.a_Z_projection.apply(rd.a_coordinates(x)) in edge
                for x in normalizer_data.a_tilde_h.basis
            )

        h_lim = self.spherical.limiting_subalgebra(z, ss)
        support = self.plucker_support(z, ss)
        oracle_cone = polycone.support_cone(support, ss.rank)
        agrees = polycone.equals(cone, oracle_cone)
        if not agrees:
            logger.warning("Monoid cone and wedge-support cone disagree for %s", z.label)

        report = CompressionReport(
            monoid_generators=monoid,
            cone=cone,
            edge=edge,
            sharp=edge.is_zero(),
            wavefront=polycone.equals(cone, image),
            chamber_contained=polycone.contains(cone, image),
            edge_contains_a_tilde=edge_contains_a_tilde,
            h_lim=h_lim,
            h_lim_is_h=h_lim == z.h,
            oracle_cone=oracle_cone,
            oracle_agrees=agrees,
            oracle_support=support,
            rank=ss.rank,
        )
        logger.info(
            "Compression cone: %s generators, edge dim %s, wavefront %s, oracle agrees %s",
            len(cone.generators),
            edge.dim,
            report.wavefront,
            agrees,
        )
        return report
