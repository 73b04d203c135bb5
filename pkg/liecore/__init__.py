"""
Lie Core
Realizations of matrix Lie algebras, restricted root decompositions and the
lattice of standard parabolics above a minimal parabolic
"""

import logging
import math
from collections import deque
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from config import Config
from errors import RealizationError, RootDatumError, WeylBoundError
from exactalg import (Matrix, Subspace, Vector, annihilator, as_vector,
                      contains, dot, intersect, inverse, is_zero_vector,
                      kernel, reduce_rows, span, subspace_sum)
from liecore.models import (Covector, LieAlgebraRealization, ParabolicData,
                            RootDatum, WeightBasis, covector_str,
                            expand_in_simple_roots)

logger = logging.getLogger(__name__)

__all__ = [
    "Covector",
    "LieAlgebraRealization",
    "ParabolicData",
    "RootDatum",
    "WeightBasis",
    "build_algebra",
    "bracket_span",
    "is_subalgebra",
    "centralizer",
    "ideal_closure",
    "normalizer",
    "root_datum",
    "minimal_parabolic",
    "standard_parabolic",
    "weyl_twists",
    "weight_basis",
]


# ============================================================================
# REALIZATIONS
# ============================================================================


def _commutator(x: Matrix, y: Matrix) -> Matrix:
    return x @ y - y @ x


def build_algebra(basis_matrices: Sequence[Matrix], label: str = "") -> LieAlgebraRealization:
    """
    Validate a matrix basis and compute its structure data

    Args:
        basis_matrices: square rational matrices of equal size
        label: display name

    Returns:
        LieAlgebraRealization with bracket table, theta and gram

    Raises:
        RealizationError: dependent basis, bracket not closed, theta(g) not in g,
            Jacobi or automorphism failure
    """
    basis = tuple(basis_matrices)
    if not basis:
        raise RealizationError("empty basis")
    n = basis[0].rows
    for b in basis:
        if not b.is_square() or b.rows != n:
            raise RealizationError("basis matrices must be square of equal size")

    flat = [b.flatten() for b in basis]
    reduced, pivots = reduce_rows(flat, n * n)
    if len(reduced) < len(basis):
        raise RealizationError("dependent basis")
    picked = Matrix.from_rows([[row[p] for p in pivots] for row in flat])
    draft = LieAlgebraRealization(
        matrix_size=n,
        basis=basis,
        bracket_table=(),
        theta_matrix=Matrix.zeros(0, 0),
        gram=Matrix.zeros(0, 0),
        pivot_entries=tuple(pivots),
        pivot_inverse=inverse(picked),
        label=label,
    )

    dim = len(basis)
    table: List[Tuple[Vector, ...]] = []
    for i in range(dim):
        row = []
        for j in range(dim):
            coords = draft.try_coordinates(_commutator(basis[i], basis[j]))
            if coords is None:
                raise RealizationError(
                    f"not closed under bracket: [b{i}, b{j}] leaves the span"
                )
            row.append(coords)
        table.append(tuple(row))

    theta_columns = []
    for j, b in enumerate(basis):
        coords = draft.try_coordinates(b.transpose().scale(-1))
        if coords is None:
            raise RealizationError(f"theta(g) not contained in g: -b{j}^T leaves the span")
        theta_columns.append(coords)

    gram = Matrix.from_rows([[dot(u, v) for v in flat] for u in flat])

    g = LieAlgebraRealization(
        matrix_size=n,
        basis=basis,
        bracket_table=tuple(table),
        theta_matrix=Matrix.from_columns(theta_columns, dim),
        gram=gram,
        pivot_entries=tuple(pivots),
        pivot_inverse=inverse(picked),
        label=label,
    )
    _check_jacobi(g)
    _check_theta_automorphism(g)
    logger.debug("Built %s: dim %s in %sx%s matrices", label or "algebra", dim, n, n)
    return g


def _unit(dim: int, i: int) -> Vector:
    return tuple(Fraction(1 if k == i else 0) for k in range(dim))


def _check_jacobi(g: LieAlgebraRealization):
    units = [_unit(g.dim, i) for i in range(g.dim)]
    for i, j, k in combinations(range(g.dim), 3):
        x, y, z = units[i], units[j], units[k]
        total = [Fraction(0)] * g.dim
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            term = g.bracket(a, g.bracket(b, c))
            total = [s + t for s, t in zip(total, term)]
        if not is_zero_vector(total):
            raise RealizationError(f"Jacobi identity fails on (b{i}, b{j}, b{k})")


def _check_theta_automorphism(g: LieAlgebraRealization):
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            left = g.theta(g.bracket_table[i][j])
            right = g.bracket(g.theta(_unit(g.dim, i)), g.theta(_unit(g.dim, j)))
            if left != right:
                raise RealizationError(f"theta is not an automorphism on (b{i}, b{j})")


# ============================================================================
# SUBALGEBRA CALCULUS
# ============================================================================


def bracket_span(g: LieAlgebraRealization, u: Subspace, v: Subspace) -> Subspace:
    """Span of [x, y] over basis vectors x of u and y of v"""
    return span([g.bracket(x, y) for x in u.basis for y in v.basis], g.dim)


def is_subalgebra(g: LieAlgebraRealization, u: Subspace) -> bool:
    return contains(u, bracket_span(g, u, u))


def centralizer(
    g: LieAlgebraRealization, u: Subspace, within: Optional[Subspace] = None
) -> Subspace:
    """{x in within : [x, u] = 0}"""
    within = g.full_space if within is None else within
    if within.is_zero():
        return within
    rows = []
    for ub in u.basis:
        images = [g.bracket(w, ub) for w in within.basis]
        for c in range(g.dim):
            rows.append([img[c] for img in images])
    solutions = kernel(Matrix.from_rows(rows, within.dim))
    return span([within.combine(y) for y in solutions.basis], g.dim)


def ideal_closure(g: LieAlgebraRealization, seed: Subspace, within: Subspace) -> Subspace:
    """Smallest ideal of `within` containing `seed`"""
    current = seed
    while True:
        grown = subspace_sum(current, bracket_span(g, within, current))
        if grown == current:
            return current
        current = grown


def normalizer(g: LieAlgebraRealization, h: Subspace) -> Subspace:
    """{x in g : [x, h] in h}, by one kernel computation"""
    equations = annihilator(h).basis
    rows = []
    for hb in h.basis:
        ad_h = g.ad(hb)
        for a in equations:
            rows.append([dot(a, ad_h.column(j)) for j in range(g.dim)])
    return kernel(Matrix.from_rows(rows, g.dim))


# ============================================================================
# RESTRICTED ROOTS
# ============================================================================


def _rational_eigenvalues(m: Matrix) -> List[Fraction]:
    """
    Candidate eigenvalues from floating point, confirmed exactly

    With d the common denominator of the entries, the rational eigenvalues
    of d*m are integers, so each candidate is a rounded multiple of 1/d.

    Raises:
        RootDatumError: if the matrix is not diagonalizable over Q
    """
    n = m.rows
    arr = np.array([[float(x) for x in m.row(i)] for i in range(n)], dtype=float)
    values = np.linalg.eigvals(arr)
    if values.size and np.max(np.abs(values.imag)) > 1e-6:
        raise RootDatumError("realization not split-adapted: non-real ad-eigenvalues")
    d = math.lcm(*(x.denominator for x in m.entries)) if m.entries else 1
    candidates = sorted({Fraction(round(float(v) * d), d) for v in values.real})
    total = 0
    confirmed = []
    for lam in candidates:
        dim = kernel(m - Matrix.identity(n).scale(lam)).dim
        if dim:
            confirmed.append(lam)
            total += dim
    if total != n:
        raise RootDatumError(
            "realization not split-adapted: ad(a) is not diagonalizable with rational eigenvalues"
        )
    return confirmed


def _generic_seed(roots: Sequence[Covector], rank: int) -> Tuple[Fraction, ...]:
    base = 2
    while True:
        seed = tuple(Fraction(base**k) for k in range(rank))
        if all(dot(r, seed) != 0 for r in roots):
            return seed
        base += 1


def _simple_roots(positive: Sequence[Covector]) -> Tuple[Covector, ...]:
    positive_set = set(positive)
    simple = []
    for beta in positive:
        decomposable = any(
            tuple(b - g for b, g in zip(beta, gamma)) in positive_set for gamma in positive
        )
        if not decomposable:
            simple.append(beta)
    return tuple(sorted(simple))


def root_datum(
    g: LieAlgebraRealization,
    a: Subspace,
    positivity_seed: Optional[Sequence] = None,
) -> RootDatum:
    """
    Joint eigenspace decomposition of g under ad(a)

    Args:
        g: realization
        a: split abelian subspace of the -1 eigenspace of theta
        positivity_seed: element of a in coordinates of the echelon basis of a;
            a root is positive when its value on the seed is positive

    Returns:
        RootDatum with positive system and simple roots

    Raises:
        RootDatumError: a not split abelian or not maximal, irrational
            eigenvalues, or seed vanishing on a root
    """
    if a.ambient_dim != g.dim:
        raise RootDatumError("a lives in a different ambient space")
    if not contains(g.s_space, a):
        raise RootDatumError("a is not contained in the -1 eigenspace of theta")
    if not bracket_span(g, a, a).is_zero():
        raise RootDatumError("a is not abelian")

    blocks: List[Tuple[Tuple[Fraction, ...], Subspace]] = [((), g.full_space)]
    for h in a.basis:
        ad_h = g.ad(h)
        eigenspaces = {
            lam: kernel(ad_h - Matrix.identity(g.dim).scale(lam))
            for lam in _rational_eigenvalues(ad_h)
        }
        refined = []
        for label, block in blocks:
            for lam, space in eigenspaces.items():
                piece = intersect(block, space)
                if piece.dim:
                    refined.append((label + (lam,), piece))
        blocks = refined
    if sum(block.dim for _, block in blocks) != g.dim:
        raise RootDatumError("joint eigenspaces of ad(a) do not fill g")

    zero = (Fraction(0),) * a.dim
    zero_space = Subspace.zero(g.dim)
    root_spaces: Dict[Covector, Subspace] = {}
    for label, block in blocks:
        if label == zero:
            zero_space = block
        else:
            root_spaces[label] = block
    if intersect(zero_space, g.s_space) != a:
        raise RootDatumError("a is not maximal: its centralizer meets the -1 eigenspace in more than a")
    m_space = intersect(zero_space, g.k_space)

    roots = tuple(sorted(root_spaces))
    if positivity_seed is None:
        seed = _generic_seed(roots, a.dim)
    else:
        seed = as_vector(positivity_seed)
        if len(seed) != a.dim:
            raise RootDatumError(f"seed has {len(seed)} values for rank {a.dim}")
    for r in roots:
        if dot(r, seed) == 0:
            raise RootDatumError(f"positivity seed vanishes on root {covector_str(r)}")
    positive = tuple(r for r in roots if dot(r, seed) > 0)

    a_gram = Matrix.from_rows(
        [[g.inner(x, y) for y in a.basis] for x in a.basis], a.dim
    )
    rd = RootDatum(
        algebra=g,
        a_basis=a,
        roots=roots,
        root_spaces=root_spaces,
        zero_space=zero_space,
        m_space=m_space,
        positive=positive,
        simple=_simple_roots(positive),
        a_gram=a_gram,
    )
    rd = rd.with_positive(rd.positive, rd.simple)
    logger.info(
        "Root datum: rank %s, %s roots, simple %s",
        rd.rank,
        len(roots),
        [covector_str(s) for s in rd.simple],
    )
    return rd


def minimal_parabolic(rd: RootDatum) -> Subspace:
    """p = m + a + sum of positive root spaces"""
    return subspace_sum(rd.zero_space, rd.root_space_sum(rd.positive))


def standard_parabolic(rd: RootDatum, marked: Iterable[int]) -> ParabolicData:
    """
    Standard parabolic attached to a set of simple roots

    Args:
        rd: root datum
        marked: indices into rd.simple

    Returns:
        ParabolicData with Levi, nilradical, and the splitting of the Levi
    """
    marked = frozenset(marked)
    if not marked <= set(range(len(rd.simple))):
        raise ValueError(f"marked indices {sorted(marked)} are not simple roots")
    g = rd.algebra

    levi_roots = tuple(r for r in rd.roots if rd.support(r) <= marked)
    u_roots = tuple(r for r in rd.positive if not rd.support(r) <= marked)
    l = subspace_sum(rd.zero_space, rd.root_space_sum(levi_roots))
    u = rd.root_space_sum(u_roots)
    u_bar = rd.root_space_sum([tuple(-x for x in r) for r in u_roots])
    q = subspace_sum(l, u)

    derived = bracket_span(g, l, l)
    l_n = ideal_closure(g, intersect(derived, g.s_space), derived)
    l_c = centralizer(g, l_n, within=derived)
    z_l = centralizer(g, l, within=l)

    return ParabolicData(
        marked_simple=marked,
        q=q,
        l=l,
        u=u,
        u_bar=u_bar,
        l_n=l_n,
        l_c=l_c,
        z_l=z_l,
        z_l_np=intersect(z_l, g.s_space),
        z_l_cp=intersect(z_l, g.k_space),
        sigma_u=tuple((r, rd.root_spaces[r].dim) for r in u_roots),
        levi_roots=levi_roots,
    )


def weyl_twists(rd: RootDatum, bound: int = None) -> List[RootDatum]:
    """
    All positive systems in the Weyl orbit of rd.positive

    Breadth first over simple-reflection words, so shorter words come first
    and ties follow the order of the simple roots.

    Raises:
        WeylBoundError: more than `bound` positive systems
    """
    bound = Config.MAX_WEYL_ELEMENTS if bound is None else bound
    root_set = set(rd.roots)
    seen = {frozenset(rd.positive)}
    queue = deque([(rd.positive, rd.simple)])
    twists = []
    while queue:
        positive, simple = queue.popleft()
        twists.append(rd.with_positive(positive, simple))
        for alpha in simple:
            reflected = tuple(rd.reflect(b, alpha) for b in positive)
            if not set(reflected) <= root_set:
                raise RootDatumError("simple reflection does not permute the roots")
            key = frozenset(reflected)
            if key in seen:
                continue
            seen.add(key)
            if len(seen) > bound:
                raise WeylBoundError(f"Weyl group exceeds the bound of {bound} elements")
            queue.append((tuple(sorted(reflected)), tuple(sorted(rd.reflect(s, alpha) for s in simple))))
    logger.debug("Enumerated %s positive systems", len(twists))
    return twists


def weight_basis(rd: RootDatum) -> WeightBasis:
    """Echelon bases of m + a and of each root space, concatenated"""
    zero = (Fraction(0),) * rd.rank
    vectors: List[Vector] = list(rd.zero_space.basis)
    weights: List[Covector] = [zero] * rd.zero_space.dim
    for r in rd.roots:
        space = rd.root_spaces[r]
        vectors.extend(space.basis)
        weights.extend([r] * space.dim)
    change = inverse(Matrix.from_columns(vectors, rd.algebra.dim))
    return WeightBasis(vectors=tuple(vectors), weights=tuple(weights), change=change)
