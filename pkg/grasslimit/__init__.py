"""
Grassmannian Degenerations
Floating point check that exp(t ad X) h tends to h_lim exactly for X in the
interior of the compression cone
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import cholesky, qr

import polycone
from compression.models import CompressionReport
from config import Config
from errors import DegenerationError
from exactalg import Subspace, Vector, as_vector, dot, is_zero_vector, reduce_rows
from grasslimit.models import Trajectory, VerificationSummary, Verdict
from liecore import weight_basis
from spherical.models import SphericalSpace, StructureSplitting

logger = logging.getLogger(__name__)

__all__ = [
    "DegenerationService",
    "Trajectory",
    "VerificationSummary",
    "Verdict",
    "projector_distance",
]


def projector_distance(p: np.ndarray, q: np.ndarray) -> float:
    """Frobenius distance of two orthogonal projectors"""
    return float(np.linalg.norm(p - q, ord="fro"))


class DegenerationService:
    """Trajectories of h under one-parameter subgroups of A_Z"""

    def __init__(
        self,
        tmax: Optional[int] = None,
        converge_tol: Optional[float] = None,
        diverge_tol: Optional[float] = None,
        margin: Optional[float] = None,
        max_rejections: Optional[int] = None,
    ):
        self.tmax = Config.GRASS_TMAX if tmax is None else tmax
        self.converge_tol = Config.GRASS_CONVERGE_TOL if converge_tol is None else converge_tol
        self.diverge_tol = Config.GRASS_DIVERGE_TOL if diverge_tol is None else diverge_tol
        self.margin = Config.GRASS_INTERIOR_MARGIN if margin is None else margin
        self.max_rejections = (
            Config.GRASS_MAX_REJECTIONS if max_rejections is None else max_rejections
        )

    def default_schedule(self) -> Tuple[float, ...]:
        return tuple(float(t) for t in range(self.tmax + 1))

    # ------------------------------------------------------------------ geometry

    @staticmethod
    def _orthonormal_projector(vectors: np.ndarray, chol: np.ndarray) -> np.ndarray:
        """Projector onto the span of the rows of `vectors` in trace-form-orthonormal coordinates"""
        if vectors.shape[0] == 0:
            return np.zeros((chol.shape[0], chol.shape[0]))
        mapped = chol.T @ vectors.T
        q, _ = qr(mapped, mode="economic")
        residual = np.linalg.norm(q.T @ q - np.eye(q.shape[1]))
        if residual > 1e-10:
            logger.warning("Orthonormalization residual %.3e", residual)
        return q @ q.T

    def degenerate(
        self,
        z: SphericalSpace,
        ss: StructureSplitting,
        X: Sequence,
        schedule: Optional[Sequence[float]] = None,
        h_lim: Optional[Subspace] = None,
    ) -> Trajectory:
        """
        Distance of exp(t ad X) h to h_lim along the schedule

        Args:
            z: spherical space
            ss: splitting of the adapted parabolic
            X: nonzero element of a_Z in g-coordinates (exact)
            schedule: increasing times, default 0..tmax
            h_lim: limiting subalgebra, computed when absent

        Raises:
            DegenerationError: X is zero or not in a_Z
        """
        X = as_vector(X)
        if is_zero_vector(X):
            raise DegenerationError("X must be nonzero")
        if X not in ss.a_Z:
            raise DegenerationError("X does not lie in a_Z")
        if h_lim is None:
            h_lim = Subspace.spanned_by(
                ss.Q.u_bar.basis + ss.h_cap_l.basis, z.g.dim
            )
        times = tuple(float(t) for t in (schedule or self.default_schedule()))

        rd = z.rd
        wb = weight_basis(rd)
        weights = [dot(w, rd.a_coordinates(X)) for w in wb.weights]
        norm = float(z.g.inner(X, X)) ** 0.5

        # leading terms sorted by weight at X so per-row renormalization is stable
        order = sorted(range(len(weights)), key=lambda j: (-weights[j], j))
        rows = [wb.expand(hb) for hb in z.h.basis]
        permuted = [[r[j] for j in order] for r in rows]
        reduced, pivots = reduce_rows(permuted, len(order))
        coeffs = np.array([[float(x) for x in r] for r in reduced])
        lam = np.array([float(weights[j]) for j in order]) / norm
        basis = np.array([[float(x) for x in wb.vectors[j]] for j in order])

        gram = np.array([[float(x) for x in z.g.gram.row(i)] for i in range(z.g.dim)])
        chol = cholesky(gram, lower=True)
        target = self._orthonormal_projector(
            np.array([[float(x) for x in v] for v in h_lim.basis]).reshape(h_lim.dim, z.g.dim),
            chol,
        )

        distances: List[float] = []
        for t in times:
            scaled = np.empty_like(coeffs)
            for i, p in enumerate(pivots):
                scaled[i] = coeffs[i] * np.exp(t * (lam - lam[p]))
            vectors = scaled @ basis
            distances.append(projector_distance(self._orthonormal_projector(vectors, chol), target))

        verdict = self._verdict(distances)
        logger.debug("Trajectory final distance %.3e: %s", distances[-1], verdict.value)
        return Trajectory(
            X=tuple(float(x) / norm for x in X),
            times=times,
            distances=tuple(distances),
            verdict=verdict,
        )

    def _verdict(self, distances: Sequence[float]) -> Verdict:
        quarter = max(1, len(distances) // 4)
        tail = distances[-quarter:]
        monotone = all(b <= a + 1e-12 for a, b in zip(tail, tail[1:]))
        if distances[-1] < self.converge_tol and monotone:
            return Verdict.CONVERGED
        if min(tail) > self.diverge_tol:
            return Verdict.DIVERGED
        return Verdict.INCONCLUSIVE

    # ------------------------------------------------------------------ sampling

    @staticmethod
    def _scaled_values(z: SphericalSpace, ss: StructureSplitting, x: Vector, functionals) -> List[float]:
        X = ss.a_Z.combine(x)
        norm = float(z.g.inner(X, X)) ** 0.5
        return [float(dot(mu, x)) / norm for mu in functionals]

    def _draw(self, rng: np.random.Generator, base: Vector) -> Vector:
        scale = max([abs(c) for c in base] + [Fraction(1)])
        return tuple(
            c + Fraction(int(rng.integers(-8, 9)), 16) * scale for c in base
        )

    def verify_cone(
        self,
        z: SphericalSpace,
        ss: StructureSplitting,
        report: CompressionReport,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> VerificationSummary:
        """
        Sample interior and exterior directions of the compression cone and
        check their trajectories converge or diverge accordingly

        Interior points satisfy mu(X) <= -margin for every nonzero weight and
        exterior points have mu(X) >= margin for one of them, after unit
        normalization; boundary points are never drawn.
        """
        samples = Config.GRASS_SAMPLES if samples is None else samples
        seed = Config.GRASS_SEED if seed is None else seed
        rng = np.random.default_rng(seed)
        rank = ss.rank
        functionals = [
            mu for mu in set(report.monoid_generators) | set(report.oracle_support)
            if not is_zero_vector(mu)
        ]

        point, full = polycone.interior_point(report.cone)
        base = point if point is not None else (Fraction(0),) * rank

        def interior_ok(x: Vector) -> bool:
            if is_zero_vector(x):
                return False
            return all(v <= -self.margin for v in self._scaled_values(z, ss, x, functionals))

        def exterior_ok(x: Vector) -> bool:
            if is_zero_vector(x) or not functionals:
                return False
            return max(self._scaled_values(z, ss, x, functionals)) >= self.margin

        interior_points = self._collect(rng, base, samples, interior_ok) if full else []
        if not full:
            logger.warning("Compression cone has empty interior in a_Z; interior samples skipped")
        exterior_base = tuple(-c for c in base)
        exterior_points = (
            self._collect(rng, exterior_base, samples, exterior_ok)
            if functionals
            else []
        )

        h_lim = report.h_lim
        interior = tuple(self.degenerate(z, ss, ss.a_Z.combine(x), h_lim=h_lim) for x in interior_points)
        exterior = tuple(self.degenerate(z, ss, ss.a_Z.combine(x), h_lim=h_lim) for x in exterior_points)
        summary = VerificationSummary(interior=interior, exterior=exterior, interior_available=full)
        if not summary.passed:
            logger.warning("Grassmannian verification failed: %s", summary.to_dict())
        else:
            logger.info("Grassmannian verification passed: %s", summary.to_dict())
        return summary

    def _collect(self, rng: np.random.Generator, base: Vector, samples: int, accept) -> List[Vector]:
        """The base point when accepted, then `samples` accepted perturbations"""
        points: List[Vector] = [base] if accept(base) else []
        drawn = rejections = 0
        while drawn < samples:
            candidate = self._draw(rng, base)
            if accept(candidate):
                points.append(candidate)
                drawn += 1
                continue
            rejections += 1
            if rejections > self.max_rejections:
                logger.warning("Stopped sampling after %s rejections", rejections)
                break
        return points
