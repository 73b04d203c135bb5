"""
Lie Algebra Models
Matrix realizations, restricted root data, parabolic data and weight bases
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Mapping, Optional, Sequence, Tuple

from errors import RootDatumError
from exactalg import (Matrix, Subspace, Vector, dot, inverse, kernel, solve,
                      span, vec_scale, vec_sub)

# Rational functional on the split Cartan, given by its values on the a-basis
Covector = Tuple[Fraction, ...]


def covector_str(values: Sequence[Fraction]) -> list:
    return [str(v) for v in values]


# ============================================================================
# REALIZATION
# ============================================================================


@dataclass(frozen=True, eq=False)
class LieAlgebraRealization:
    """Matrix Lie algebra over Q with structure constants, theta and the trace form"""

    matrix_size: int
    basis: Tuple[Matrix, ...]
    bracket_table: Tuple[Tuple[Vector, ...], ...]
    theta_matrix: Matrix
    gram: Matrix
    pivot_entries: Tuple[int, ...]
    pivot_inverse: Matrix
    label: str = ""

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coords: Sequence[Fraction]) -> Matrix:
        n2 = self.matrix_size * self.matrix_size
        entries = [Fraction(0)] * n2
        for c, b in zip(coords, self.basis):
            if c != 0:
                entries = [e + c * x for e, x in zip(entries, b.entries)]
        return Matrix(self.matrix_size, self.matrix_size, tuple(entries))

    def try_coordinates(self, x: Matrix) -> Optional[Vector]:
        """Coordinates of x in the basis, or None when x is outside the span"""
        if (x.rows, x.cols) != (self.matrix_size, self.matrix_size):
            return None
        picked = [x.entries[p] for p in self.pivot_entries]
        coords = tuple(
            sum(
                (picked[i] * self.pivot_inverse[i, k] for i in range(self.dim)),
                Fraction(0),
            )
            for k in range(self.dim)
        )
        if self.element(coords) != x:
            return None
        return coords

    def coordinates(self, x: Matrix) -> Vector:
        coords = self.try_coordinates(x)
        if coords is None:
            raise ValueError(f"{x!r} is not in the span of the basis")
        return coords

    def bracket(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        out = [Fraction(0)] * self.dim
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            row = self.bracket_table[i]
            for j, vj in enumerate(v):
                if vj == 0:
                    continue
                c = ui * vj
                out = [a + c * b for a, b in zip(out, row[j])]
        return tuple(out)

    def ad(self, x: Sequence[Fraction]) -> Matrix:
        """Matrix of ad(x) in basis coordinates (column j is [x, b_j])"""
        columns = []
        for j in range(self.dim):
            col = [Fraction(0)] * self.dim
            for i, xi in enumerate(x):
                if xi != 0:
                    col = [a + xi * b for a, b in zip(col, self.bracket_table[i][j])]
            columns.append(col)
        return Matrix.from_columns(columns, self.dim)

    def theta(self, x: Sequence[Fraction]) -> Vector:
        return self.theta_matrix.apply(x)

    def inner(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return dot(u, self.gram.apply(v))

    @cached_property
    def full_space(self) -> Subspace:
        return Subspace.full(self.dim)

    @cached_property
    def s_space(self) -> Subspace:
        """-1 eigenspace of theta (symmetric matrices)"""
        return kernel(self.theta_matrix + Matrix.identity(self.dim))

    @cached_property
    def k_space(self) -> Subspace:
        """+1 eigenspace of theta (antisymmetric matrices)"""
        return kernel(self.theta_matrix - Matrix.identity(self.dim))

    def __repr__(self):
        return f"<LieAlgebraRealization {self.label or '?'} dim={self.dim}>"


# ============================================================================
# ROOT DATUM
# ============================================================================


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Restricted roots of g with respect to a split Cartan a, plus a positive system"""

    algebra: LieAlgebraRealization
    a_basis: Subspace
    roots: Tuple[Covector, ...]
    root_spaces: Mapping[Covector, Subspace]
    zero_space: Subspace
    m_space: Subspace
    positive: Tuple[Covector, ...]
    simple: Tuple[Covector, ...]
    a_gram: Matrix
    simple_coordinates: Mapping[Covector, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return self.a_basis.dim

    @property
    def negative(self) -> Tuple[Covector, ...]:
        return tuple(sorted(tuple(-x for x in r) for r in self.positive))

    @cached_property
    def _dual_gram(self) -> Matrix:
        return inverse(self.a_gram) if self.rank else Matrix.zeros(0, 0)

    def pairing(self, lam: Sequence[Fraction], mu: Sequence[Fraction]) -> Fraction:
        """Inner product on covectors dual to the trace form on a"""
        return dot(lam, self._dual_gram.apply(mu))

    def reflect(self, beta: Covector, alpha: Covector) -> Covector:
        factor = 2 * self.pairing(beta, alpha) / self.pairing(alpha, alpha)
        return vec_sub(beta, vec_scale(factor, alpha))

    def a_coordinates(self, x: Sequence[Fraction]) -> Vector:
        return self.a_basis.coordinates(x)

    def evaluate(self, root: Covector, x: Sequence[Fraction]) -> Fraction:
        """root(x) for x in a, given in coordinates of g"""
        return dot(root, self.a_coordinates(x))

    def restrict(self, root: Covector, subspace: Subspace) -> Covector:
        """Values of root on the echelon basis of a subspace of a"""
        return tuple(self.evaluate(root, z) for z in subspace.basis)

    def support(self, root: Covector) -> FrozenSet[int]:
        return frozenset(i for i, c in enumerate(self.simple_coordinates[root]) if c != 0)

    def root_space_sum(self, roots: Sequence[Covector]) -> Subspace:
        vectors = [v for r in roots for v in self.root_spaces[r].basis]
        return span(vectors, self.algebra.dim)

    def with_positive(
        self, positive: Sequence[Covector], simple: Sequence[Covector]
    ) -> "RootDatum":
        twisted = replace(self, positive=tuple(sorted(positive)), simple=tuple(simple))
        return replace(twisted, simple_coordinates=expand_in_simple_roots(twisted))

    def __repr__(self):
        return (
            f"<RootDatum rank={self.rank} roots={len(self.roots)} "
            f"simple={[covector_str(s) for s in self.simple]}>"
        )


def expand_in_simple_roots(rd: RootDatum) -> Dict[Covector, Tuple[int, ...]]:
    """
    Expand every root in the simple roots of rd

    Raises:
        RootDatumError: if some root is not an integral combination of one sign
    """
    out: Dict[Covector, Tuple[int, ...]] = {}
    if not rd.simple:
        if rd.roots:
            raise RootDatumError("roots present but no simple roots")
        return out
    system = Matrix.from_columns(rd.simple, rd.rank)
    for root in rd.roots:
        coeffs = solve(system, root)
        if coeffs is None or any(c.denominator != 1 for c in coeffs):
            raise RootDatumError(
                f"root {covector_str(root)} is not an integral combination of simple roots"
            )
        signs = {c > 0 for c in coeffs if c != 0}
        if len(signs) != 1:
            raise RootDatumError(f"root {covector_str(root)} has mixed-sign expansion")
        out[root] = tuple(int(c) for c in coeffs)
    return out


# ============================================================================
# PARABOLIC DATA
# ============================================================================


@dataclass(frozen=True, eq=False)
class ParabolicData:
    """Standard parabolic q = l + u above the minimal parabolic"""

    marked_simple: FrozenSet[int]
    q: Subspace
    l: Subspace
    u: Subspace
    u_bar: Subspace
    l_n: Subspace
    l_c: Subspace
    z_l: Subspace
    z_l_np: Subspace
    z_l_cp: Subspace
    sigma_u: Tuple[Tuple[Covector, int], ...]
    levi_roots: Tuple[Covector, ...] = ()

    @property
    def u_roots(self) -> Tuple[Covector, ...]:
        return tuple(r for r, _ in self.sigma_u)

    def __repr__(self):
        return (
            f"<ParabolicData S={sorted(self.marked_simple)} dim q={self.q.dim} "
            f"dim l={self.l.dim} dim u={self.u.dim}>"
        )


# ============================================================================
# WEIGHT BASIS
# ============================================================================


@dataclass(frozen=True, eq=False)
class WeightBasis:
    """Basis of g adapted to the weight decomposition under ad(a)"""

    vectors: Tuple[Vector, ...]
    weights: Tuple[Covector, ...]
    change: Matrix

    def expand(self, x: Sequence[Fraction]) -> Vector:
        """Coordinates of x (given in the g-basis) in the weight basis"""
        return self.change.apply(x)

    def indices(self, weights) -> Tuple[int, ...]:
        wanted = set(weights)
        return tuple(i for i, w in enumerate(self.weights) if w in wanted)
