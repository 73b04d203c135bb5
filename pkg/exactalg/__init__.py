"""
Exact Linear Algebra
Rational elimination and the canonical subspace calculus used by every other package
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence

from errors import DimensionMismatchError, NotDirectSumError
from exactalg.models import (Matrix, Subspace, Vector, as_vector, reduce_rows,
                             to_rational)

logger = logging.getLogger(__name__)

__all__ = [
    "Matrix",
    "Subspace",
    "Vector",
    "as_vector",
    "to_rational",
    "rref",
    "rank",
    "solve",
    "kernel",
    "inverse",
    "span",
    "subspace_sum",
    "intersect",
    "contains",
    "annihilator",
    "is_positive_definite",
    "orth_complement",
    "projector",
    "project",
    "dot",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "is_zero_vector",
    "zero_vector",
    "unit_vector",
    "primitive_integer_vector",
]


# ============================================================================
# VECTOR HELPERS
# ============================================================================


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(factor, v: Sequence[Fraction]) -> Vector:
    factor = to_rational(factor)
    return tuple(factor * a for a in v)


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def primitive_integer_vector(v: Sequence[Fraction]) -> Vector:
    """
    Positive rescaling of v to coprime integers

    Args:
        v: nonzero rational vector

    Returns:
        Vector with integer entries whose gcd is 1, same direction as v
    """
    denominators = 1
    for a in v:
        denominators = denominators * a.denominator // gcd(denominators, a.denominator)
    ints = [int(a * denominators) for a in v]
    divisor = 0
    for a in ints:
        divisor = gcd(divisor, abs(a))
    if divisor == 0:
        return tuple(Fraction(0) for _ in v)
    return tuple(Fraction(a // divisor) for a in ints)


# ============================================================================
# ELIMINATION
# ============================================================================


def rref(m: Matrix) -> Matrix:
    """
    Reduced row-echelon form of m, zero rows moved to the bottom

    Args:
        m: rational matrix

    Returns:
        Matrix of the same shape with the same row space
    """
    reduced, _ = reduce_rows(m.row_vectors(), m.cols)
    rows = list(reduced) + [(Fraction(0),) * m.cols] * (m.rows - len(reduced))
    return Matrix.from_rows(rows, m.cols)


def rank(m: Matrix) -> int:
    return len(reduce_rows(m.row_vectors(), m.cols)[0])


def solve(a: Matrix, b: Sequence) -> Optional[Vector]:
    """
    One exact solution of a x = b

    Free variables are set to zero so the answer is deterministic.

    Args:
        a: coefficient matrix
        b: right-hand side of length a.rows

    Returns:
        Solution vector, or None when the system is inconsistent
    """
    b = as_vector(b)
    if len(b) != a.rows:
        raise DimensionMismatchError(
            f"right-hand side of length {len(b)} for {a.rows} equations"
        )
    augmented = [tuple(a.row(i)) + (b[i],) for i in range(a.rows)]
    reduced, pivots = reduce_rows(augmented, a.cols + 1)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [Fraction(0)] * a.cols
    for row, p in zip(reduced, pivots):
        x[p] = row[-1]
    return tuple(x)


def kernel(m: Matrix) -> Subspace:
    """Null space {x : m x = 0} as a canonical subspace"""
    reduced, pivots = reduce_rows(m.row_vectors(), m.cols)
    pivot_set = set(pivots)
    vectors = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[free]
        vectors.append(v)
    return Subspace.spanned_by(vectors, m.cols)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise DimensionMismatchError(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    identity = Matrix.identity(n)
    augmented = [m.row(i) + identity.row(i) for i in range(n)]
    reduced, pivots = reduce_rows(augmented, 2 * n)
    if len(pivots) < n or pivots[n - 1] >= n:
        raise ValueError("matrix is singular")
    return Matrix.from_rows([row[n:] for row in reduced], n)


# ============================================================================
# SUBSPACE LATTICE
# ============================================================================


def span(vectors: Iterable[Sequence], ambient_dim: int = None) -> Subspace:
    vectors = [as_vector(v) for v in vectors]
    if ambient_dim is None:
        if not vectors:
            raise DimensionMismatchError("ambient dimension required for an empty span")
        ambient_dim = len(vectors[0])
    return Subspace.spanned_by(vectors, ambient_dim)


def _check_ambient(u: Subspace, v: Subspace):
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {u.ambient_dim} vs {v.ambient_dim}"
        )


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    return Subspace.spanned_by(u.basis + v.basis, u.ambient_dim)


def annihilator(u: Subspace) -> Subspace:
    """{x : <x, b> = 0 for every basis vector b}, standard dot product"""
    return kernel(Matrix.from_rows(u.basis, u.ambient_dim))


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """Intersection as the kernel of the stacked annihilator equations"""
    _check_ambient(u, v)
    equations = annihilator(u).basis + annihilator(v).basis
    return kernel(Matrix.from_rows(equations, u.ambient_dim))


def contains(u: Subspace, v: Subspace) -> bool:
    """True when v is a subspace of u"""
    _check_ambient(u, v)
    return all(b in u for b in v.basis)


@lru_cache(maxsize=None)
def is_positive_definite(gram: Matrix) -> bool:
    """Symmetric elimination; positive definite iff every pivot is positive"""
    if not gram.is_symmetric():
        return False
    n = gram.rows
    work = [list(gram.row(i)) for i in range(n)]
    for k in range(n):
        pivot = work[k][k]
        if pivot <= 0:
            return False
        for i in range(k + 1, n):
            factor = work[i][k] / pivot
            if factor != 0:
                work[i] = [a - factor * b for a, b in zip(work[i], work[k])]
    return True


def orth_complement(u: Subspace, gram: Matrix) -> Subspace:
    """
    Orthogonal complement of u for the inner product given by gram

    Args:
        u: subspace of Q^n
        gram: n x n symmetric positive definite matrix

    Returns:
        {x : gram(x, b) = 0 for all b in u}
    """
    if not gram.is_square() or gram.rows != u.ambient_dim:
        raise DimensionMismatchError(
            f"gram of shape {gram.rows}x{gram.cols} for ambient dimension {u.ambient_dim}"
        )
    if not is_positive_definite(gram):
        raise ValueError("gram is not symmetric positive definite")
    equations = [gram.apply(b) for b in u.basis]
    return kernel(Matrix.from_rows(equations, u.ambient_dim))


@lru_cache(maxsize=None)
def projector(onto: Subspace, along: Subspace) -> Matrix:
    """
    Projection matrix onto `onto` along `along`

    Raises:
        NotDirectSumError: when onto + along is not a direct sum filling the ambient space
    """
    _check_ambient(onto, along)
    n = onto.ambient_dim
    if onto.dim + along.dim != n or not subspace_sum(onto, along).is_full():
        raise NotDirectSumError(
            f"dimensions {onto.dim} + {along.dim} do not split Q^{n} as a direct sum"
        )
    if n == 0:
        return Matrix.zeros(0, 0)
    change = Matrix.from_columns(onto.basis + along.basis, n)
    keep = Matrix(
        n,
        n,
        tuple(
            Fraction(1 if i == j and i < onto.dim else 0)
            for i in range(n)
            for j in range(n)
        ),
    )
    return change @ keep @ inverse(change)


def project(x: Sequence, onto: Subspace, along: Subspace) -> Vector:
    """Component of x in `onto` for the decomposition onto + along"""
    return projector(onto, along).apply(as_vector(x))
