"""
Named Families
Standard matrix realizations with built-in split Cartan and positivity seed

Basis conventions (0-based matrix units E_ij):
    sl(n):    H_k = E_kk - E_(k+1)(k+1), then E_ij for i < j in lexicographic
              order, then E_ji in the same pair order
    so(p, q): Y_k = E_k(p+k) + E_(p+k)k for k < min(p, q), then the other
              pairs i < j: E_ij - E_ji inside a block, E_ij + E_ji across
    sp(n):    sp(2n, R) with H_i = E_ii - E_(n+i)(n+i), then E_ij - E_(n+j)(n+i)
              for i != j, then E_i(n+j) + E_j(n+i) for i <= j, then the
              transposes E_(n+i)j + E_(n+j)i
    product:  block diagonal, bases concatenated in factor order
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from errors import RealizationError
from exactalg import Matrix, Subspace, kernel, span, unit_vector
from liecore import build_algebra, is_subalgebra
from liecore.models import LieAlgebraRealization

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NamedAlgebra:
    """A realization together with the split Cartan and seed it ships with"""

    algebra: LieAlgebraRealization
    cartan: Subspace
    seed: Optional[Tuple[Fraction, ...]]
    label: str
    factors: Tuple["NamedAlgebra", ...] = ()


_unit = Matrix.unit


def _named(matrices, rank: int, seed, label: str, factors=()) -> NamedAlgebra:
    g = build_algebra(matrices, label=label)
    cartan = span([unit_vector(g.dim, i) for i in range(rank)], g.dim)
    return NamedAlgebra(
        algebra=g,
        cartan=cartan,
        seed=tuple(Fraction(s) for s in seed),
        label=label,
        factors=tuple(factors),
    )


def sl(n: int) -> NamedAlgebra:
    """sl(n, R) with the diagonal Cartan; seed k(n - k) makes E_ij, i < j, positive"""
    if n < 2:
        raise RealizationError(f"sl(n) needs n >= 2, got {n}")
    matrices = [_unit(n, k, k) - _unit(n, k + 1, k + 1) for k in range(n - 1)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    matrices += [_unit(n, i, j) for i, j in pairs]
    matrices += [_unit(n, j, i) for i, j in pairs]
    seed = [k * (n - k) for k in range(1, n)]
    return _named(matrices, n - 1, seed, f"sl({n})")


def so(p: int, q: int) -> NamedAlgebra:
    """so(p, q) preserving diag(1^p, (-1)^q)"""
    if p < 0 or q < 0 or p + q < 2:
        raise RealizationError(f"so(p, q) needs p + q >= 2, got ({p}, {q})")
    n = p + q
    m = min(p, q)
    cartan_pairs = {(k, p + k) for k in range(m)}
    matrices = [_unit(n, i, j) + _unit(n, j, i) for i, j in sorted(cartan_pairs)]
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in cartan_pairs:
                continue
            if (i < p) == (j < p):
                matrices.append(_unit(n, i, j) - _unit(n, j, i))
            else:
                matrices.append(_unit(n, i, j) + _unit(n, j, i))
    seed = list(range(m, 0, -1))
    return _named(matrices, m, seed, f"so({p},{q})")


def sp(n: int) -> NamedAlgebra:
    """sp(2n, R) for the form [[0, I], [-I, 0]]"""
    if n < 1:
        raise RealizationError(f"sp(n) needs n >= 1, got {n}")
    size = 2 * n
    matrices = [_unit(size, i, i) - _unit(size, n + i, n + i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                matrices.append(_unit(size, i, j) - _unit(size, n + j, n + i))
    upper = [(i, j) for i in range(n) for j in range(i, n)]
    for i, j in upper:
        m = _unit(size, i, n + j)
        matrices.append(m if i == j else m + _unit(size, j, n + i))
    for i, j in upper:
        m = _unit(size, n + i, j)
        matrices.append(m if i == j else m + _unit(size, n + j, i))
    seed = list(range(n, 0, -1))
    return _named(matrices, n, seed, f"sp({size})")


def _embed(m: Matrix, size: int, offset: int) -> Matrix:
    entries = [Fraction(0)] * (size * size)
    for i in range(m.rows):
        for j in range(m.cols):
            entries[(offset + i) * size + offset + j] = m[i, j]
    return Matrix(size, size, tuple(entries))


def product(*factors: NamedAlgebra) -> NamedAlgebra:
    """Direct sum of named algebras as block-diagonal matrices"""
    if not factors:
        raise RealizationError("product needs at least one factor")
    size = sum(f.algebra.matrix_size for f in factors)
    matrices = []
    cartan_vectors = []
    seed = []
    offset = 0
    dim_offset = 0
    total_dim = sum(f.algebra.dim for f in factors)
    for f in factors:
        matrices.extend(_embed(b, size, offset) for b in f.algebra.basis)
        for h in f.cartan.basis:
            padding = total_dim - dim_offset - len(h)
            cartan_vectors.append((Fraction(0),) * dim_offset + h + (Fraction(0),) * padding)
        if f.seed is None:
            raise RealizationError(f"factor {f.label} has no positivity seed")
        seed.extend(f.seed)
        offset += f.algebra.matrix_size
        dim_offset += f.algebra.dim
    label = " x ".join(f.label for f in factors)
    g = build_algebra(matrices, label=label)
    return NamedAlgebra(
        algebra=g,
        cartan=span(cartan_vectors, g.dim),
        seed=tuple(seed),
        label=label,
        factors=tuple(factors),
    )


# ============================================================================
# SUBALGEBRAS
# ============================================================================


def symmetric_subalgebra(g: LieAlgebraRealization, involution) -> Subspace:
    """
    Fixed points of sigma(X) = -J X^T J

    Args:
        g: realization
        involution: J, symmetric with J^2 = 1

    Raises:
        RealizationError: J is not a symmetric involution or sigma does not preserve g
    """
    j = involution if isinstance(involution, Matrix) else Matrix.from_rows(involution)
    if j.rows != g.matrix_size or not j.is_square():
        raise RealizationError(
            f"involution of shape {j.rows}x{j.cols} for {g.matrix_size}x{g.matrix_size} matrices"
        )
    if not j.is_symmetric() or j @ j != Matrix.identity(j.rows):
        raise RealizationError("J must be symmetric with J^2 = 1")
    columns = []
    for k, b in enumerate(g.basis):
        image = g.try_coordinates((j @ b.transpose() @ j).scale(-1))
        if image is None:
            raise RealizationError(f"the involution does not preserve g (basis element b{k})")
        columns.append(image)
    sigma = Matrix.from_columns(columns, g.dim)
    fixed = kernel(sigma - Matrix.identity(g.dim))
    logger.debug("Symmetric subalgebra of dim %s in %s", fixed.dim, g.label)
    return fixed


def diagonal_subalgebra(named: NamedAlgebra) -> Subspace:
    """Diagonal copy of the factor in a product of identical factors"""
    factors = named.factors
    if len(factors) < 2:
        raise RealizationError("diagonal subalgebra needs a product of at least two factors")
    first = factors[0].algebra
    for f in factors[1:]:
        if f.algebra.basis != first.basis:
            raise RealizationError("diagonal subalgebra needs identical factors")
    vectors = []
    for i in range(first.dim):
        vectors.append(
            tuple(Fraction(1 if k % first.dim == i else 0) for k in range(named.algebra.dim))
        )
    return span(vectors, named.algebra.dim)


def subalgebra_from_matrices(g: LieAlgebraRealization, matrices: Sequence[Matrix]) -> Subspace:
    """
    Span of explicit matrices inside g

    Raises:
        RealizationError: a matrix lies outside g or the span is not a subalgebra
    """
    vectors = []
    for k, m in enumerate(matrices):
        coords = g.try_coordinates(m)
        if coords is None:
            raise RealizationError(f"subalgebra basis element {k} is not in g")
        vectors.append(coords)
    h = span(vectors, g.dim)
    if h.dim != len(vectors):
        raise RealizationError("subalgebra basis is linearly dependent")
    if not is_subalgebra(g, h):
        raise RealizationError("span is not closed under the bracket")
    return h


def diagonal_cartan(g: LieAlgebraRealization) -> Subspace:
    """Diagonal matrices in g"""
    n = g.matrix_size
    rows = []
    for i in range(n):
        for j in range(n):
            if i != j:
                rows.append([b[i, j] for b in g.basis])
    if not rows:
        return g.full_space
    return kernel(Matrix.from_rows(rows, g.dim))


def cartan_from_matrices(g: LieAlgebraRealization, matrices: Sequence[Matrix]) -> Subspace:
    vectors = []
    for k, m in enumerate(matrices):
        coords = g.try_coordinates(m)
        if coords is None:
            raise RealizationError(f"cartan basis element {k} is not in g")
        vectors.append(coords)
    return span(vectors, g.dim)
