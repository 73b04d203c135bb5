"""
Exact Linear Algebra Models
Immutable rational matrices and canonical (reduced row-echelon) subspaces
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from errors import DimensionMismatchError

Vector = Tuple[Fraction, ...]

_RATIONAL_PATTERN = re.compile(r"^[+-]?\d+(/\d+)?$")


def to_rational(value) -> Fraction:
    """
    Convert an exact scalar to a Fraction

    Args:
        value: Fraction, int, or a "p/q" / "p" string

    Returns:
        Fraction in lowest terms
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError(f"not an exact rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_PATTERN.match(text):
            raise ValueError(f"malformed rational {value!r}")
        numerator, _, denominator = text.partition("/")
        if denominator and int(denominator) == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(int(numerator), int(denominator or 1))
    raise TypeError(f"not an exact rational: {value!r}")


def as_vector(values: Iterable) -> Vector:
    return tuple(to_rational(v) for v in values)


def reduce_rows(rows: Sequence[Sequence[Fraction]], ncols: int):
    """
    Gauss-Jordan elimination over the rationals

    Args:
        rows: row vectors of length ncols
        ncols: number of columns

    Returns:
        (reduced nonzero rows, pivot columns)
    """
    work: List[List[Fraction]] = [list(r) for r in rows]
    pivots: List[int] = []
    rank = 0
    for col in range(ncols):
        if rank == len(work):
            break
        pivot_row = next(
            (i for i in range(rank, len(work)) if work[i][col] != 0), None
        )
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for i in range(len(work)):
            factor = work[i][col]
            if i != rank and factor != 0:
                work[i] = [a - factor * b for a, b in zip(work[i], work[rank])]
        pivots.append(col)
        rank += 1
    return [tuple(r) for r in work[:rank]], pivots


# ============================================================================
# MATRIX
# ============================================================================


@dataclass(frozen=True)
class Matrix:
    """Dense rational matrix, row-major"""

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int = None) -> "Matrix":
        rows = [as_vector(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionMismatchError("column count required for empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatchError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        return cls.from_rows(columns, rows).transpose() if columns else cls.zeros(
            rows, 0
        )

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(
            n,
            n,
            tuple(Fraction(1 if i == j else 0) for i in range(n) for j in range(n)),
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "Matrix":
        """Matrix unit E_ij (0-based)"""
        entries = [Fraction(0)] * (n * n)
        entries[i * n + j] = Fraction(1)
        return cls(n, n, tuple(entries))

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_vectors(self) -> List[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols)
        return Matrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def scale(self, factor) -> "Matrix":
        factor = to_rational(factor)
        return Matrix(self.rows, self.cols, tuple(factor * a for a in self.entries))

    def apply(self, vector: Sequence[Fraction]) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatchError(
                f"vector of length {len(vector)} for {self.cols} columns"
            )
        return tuple(
            sum((a * b for a, b in zip(self.row(i), vector)), Fraction(0))
            for i in range(self.rows)
        )

    def flatten(self) -> Vector:
        return self.entries

    def trace(self) -> Fraction:
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def _check_same_shape(self, other: "Matrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError(
                f"shape {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"<Matrix {self.rows}x{self.cols} [{body}]>"


# ============================================================================
# SUBSPACE
# ============================================================================


@dataclass(frozen=True)
class Subspace:
    """
    Subspace of Q^n stored by its reduced row-echelon basis.

    Two equal subspaces have identical representations, so == is
    subspace equality.
    """

    ambient_dim: int
    basis: Tuple[Vector, ...]

    @classmethod
    def spanned_by(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [as_vector(v) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatchError(
                    f"vector of length {len(r)} in ambient dimension {ambient_dim}"
                )
        reduced, _ = reduce_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(reduced))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(Matrix.identity(ambient_dim).row_vectors()))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(r) if x != 0) for r in self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def residual(self, vector: Sequence[Fraction]) -> Vector:
        """Remainder of vector after reduction against the echelon basis"""
        if len(vector) != self.ambient_dim:
            raise DimensionMismatchError(
                f"vector of length {len(vector)} in ambient dimension {self.ambient_dim}"
            )
        rest = list(as_vector(vector))
        for row, p in zip(self.basis, self.pivots):
            factor = rest[p]
            if factor != 0:
                rest = [a - factor * b for a, b in zip(rest, row)]
        return tuple(rest)

    def __contains__(self, vector) -> bool:
        return all(x == 0 for x in self.residual(vector))

    def coordinates(self, vector: Sequence[Fraction]) -> Vector:
        """Coefficients of vector in the echelon basis"""
        vector = as_vector(vector)
        if vector not in self:
            raise ValueError("vector does not lie in the subspace")
        return tuple(vector[p] for p in self.pivots)

    def combine(self, coefficients: Sequence[Fraction]) -> Vector:
        out = [Fraction(0)] * self.ambient_dim
        for c, row in zip(coefficients, self.basis):
            if c != 0:
                out = [a + c * b for a, b in zip(out, row)]
        return tuple(out)

    def as_matrix(self) -> Matrix:
        return Matrix(
            self.dim, self.ambient_dim, tuple(x for r in self.basis for x in r)
        )

    def __repr__(self):
        return f"<Subspace dim={self.dim} in Q^{self.ambient_dim}>"
