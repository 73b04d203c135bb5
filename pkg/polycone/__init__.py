"""
Polyhedral Cones
Conversion between inequality and generator form through the Parma Polyhedra
Library, plus the cone operations used for compression cones
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import ppl

from errors import ConsistencyError, DimensionMismatchError
from exactalg import (Matrix, Subspace, Vector, as_vector, is_zero_vector,
                      kernel, orth_complement, primitive_integer_vector,
                      project, span, vec_add)
from polycone.models import Cone

logger = logging.getLogger(__name__)

__all__ = [
    "Cone",
    "from_inequalities",
    "from_generators",
    "polyhedron",
    "dual",
    "edge",
    "contains",
    "equals",
    "intersect",
    "linear_image",
    "interior_point",
    "support_cone",
]


# ============================================================================
# CONVERSION
# ============================================================================


def _check_vectors(vectors: Sequence[Sequence], ambient_dim: int) -> List[Vector]:
    out = [as_vector(v) for v in vectors]
    for v in out:
        if len(v) != ambient_dim:
            raise DimensionMismatchError(
                f"vector of length {len(v)} in ambient dimension {ambient_dim}"
            )
    return out


def _integer_expression(v: Vector, sign: int = 1) -> ppl.Linear_Expression:
    return ppl.Linear_Expression([sign * int(x) for x in primitive_integer_vector(v)], 0)


def _coefficients(item, ambient_dim: int) -> Vector:
    values = [Fraction(int(x)) for x in item.coefficients()]
    return tuple(values + [Fraction(0)] * (ambient_dim - len(values)))


def _polyhedron_from_inequalities(rows: Sequence[Vector], ambient_dim: int) -> ppl.C_Polyhedron:
    cs = ppl.Constraint_System()
    for a in rows:
        if not is_zero_vector(a):
            # <a, x> <= 0 reads -a.x >= 0
            cs.insert(ppl.Constraint(_integer_expression(a, -1) >= 0))
    cone = ppl.C_Polyhedron(ambient_dim, "universe")
    cone.add_constraints(cs)
    return cone


def _polyhedron_from_generators(vectors: Sequence[Vector], ambient_dim: int) -> ppl.C_Polyhedron:
    gs = ppl.Generator_System()
    gs.insert(ppl.point())
    for v in vectors:
        if not is_zero_vector(v):
            gs.insert(ppl.ray(_integer_expression(v)))
    cone = ppl.C_Polyhedron(ambient_dim, "empty")
    cone.add_generators(gs)
    return cone


def _read_generators(cone: ppl.C_Polyhedron, ambient_dim: int) -> Tuple[List[Vector], List[Vector]]:
    """(lines, rays) of the minimized generator system; the apex is dropped"""
    lines, rays = [], []
    for gen in cone.minimized_generators():
        if gen.is_line():
            lines.append(_coefficients(gen, ambient_dim))
        elif gen.is_ray():
            rays.append(_coefficients(gen, ambient_dim))
        elif not is_zero_vector(_coefficients(gen, ambient_dim)):
            raise ConsistencyError("cone has a vertex away from the origin", stage="polycone")
    return lines, rays


def _read_inequalities(cone: ppl.C_Polyhedron, ambient_dim: int) -> Tuple[List[Vector], List[Vector]]:
    """(equalities, inequality rows a for <a, x> <= 0) of the minimized constraints"""
    equalities, inequalities = [], []
    for cstr in cone.minimized_constraints():
        c = _coefficients(cstr, ambient_dim)
        if is_zero_vector(c):
            continue
        if cstr.inhomogeneous_term() != 0:
            raise ConsistencyError("constraint with a nonzero constant term", stage="polycone")
        if cstr.is_equality():
            equalities.append(c)
        else:
            inequalities.append(tuple(-x for x in c))
    return equalities, inequalities


def _canonical_generators(
    lines: Sequence[Vector], rays: Sequence[Vector], ambient_dim: int
) -> Tuple[Vector, ...]:
    """
    Sorted primitive generators: both signs of the echelon basis of the
    lineality space, then rays projected orthogonally off that space
    """
    lineality = span(lines, ambient_dim)
    out = set()
    for b in lineality.basis:
        p = primitive_integer_vector(b)
        out.add(p)
        out.add(tuple(-x for x in p))
    if lineality.dim and not lineality.is_full():
        complement = orth_complement(lineality, Matrix.identity(ambient_dim))
        rays = [project(r, complement, lineality) for r in rays]
    elif lineality.is_full():
        rays = []
    for r in rays:
        if not is_zero_vector(r):
            out.add(primitive_integer_vector(r))
    return tuple(sorted(out))


def _cone_of(polyhedron: ppl.C_Polyhedron, ambient_dim: int) -> Cone:
    generators = _canonical_generators(*_read_generators(polyhedron, ambient_dim), ambient_dim)
    inequalities = _canonical_generators(*_read_inequalities(polyhedron, ambient_dim), ambient_dim)
    logger.debug(
        "Cone in Q^%s: %s generators, %s inequalities", ambient_dim, len(generators), len(inequalities)
    )
    return _validated(Cone(ambient_dim, generators, inequalities))


def _validated(c: Cone) -> Cone:
    for g in c.generators:
        if g not in c:
            raise ConsistencyError(
                f"generator {list(map(str, g))} violates the inequalities", stage="polycone"
            )
    return c


# ============================================================================
# CONSTRUCTORS
# ============================================================================


def from_inequalities(covectors: Sequence[Sequence], ambient_dim: int) -> Cone:
    """
    Cone {x : <a, x> <= 0} from its inequalities

    Args:
        covectors: rows a
        ambient_dim: dimension of the ambient space

    Returns:
        Cone with canonical generators and reduced inequalities
    """
    rows = _check_vectors(covectors, ambient_dim)
    return _cone_of(_polyhedron_from_inequalities(rows, ambient_dim), ambient_dim)


def from_generators(vectors: Sequence[Sequence], ambient_dim: int) -> Cone:
    """Conic hull of vectors; the empty list gives the zero cone"""
    gens = _check_vectors(vectors, ambient_dim)
    return _cone_of(_polyhedron_from_generators(gens, ambient_dim), ambient_dim)


def polyhedron(c: Cone) -> ppl.C_Polyhedron:
    """c as a closed ppl polyhedron built from its inequalities"""
    return _polyhedron_from_inequalities(c.inequalities, c.ambient_dim)


def support_cone(weights: Sequence[Sequence], ambient_dim: int) -> Cone:
    """{X : nu(X) <= 0 for every nonzero nu in weights}"""
    nonzero = [w for w in _check_vectors(weights, ambient_dim) if not is_zero_vector(w)]
    return from_inequalities(nonzero, ambient_dim)


# ============================================================================
# OPERATIONS
# ============================================================================


def dual(c: Cone) -> Cone:
    """{y : <y, x> <= 0 for every x in c}"""
    return Cone(c.ambient_dim, c.inequalities, c.generators)


def edge(c: Cone) -> Subspace:
    """Lineality space c and -c have in common"""
    return kernel(Matrix.from_rows(c.inequalities, c.ambient_dim))


def _check_same_ambient(c: Cone, d: Cone):
    if c.ambient_dim != d.ambient_dim:
        raise DimensionMismatchError(
            f"cones in Q^{c.ambient_dim} and Q^{d.ambient_dim}"
        )


def contains(c: Cone, d: Cone) -> bool:
    """True when d is a subset of c"""
    _check_same_ambient(c, d)
    return polyhedron(c).contains(polyhedron(d))


def equals(c: Cone, d: Cone) -> bool:
    return contains(c, d) and contains(d, c)


def intersect(c: Cone, d: Cone) -> Cone:
    _check_same_ambient(c, d)
    return from_inequalities(c.inequalities + d.inequalities, c.ambient_dim)


def linear_image(c: Cone, m: Matrix) -> Cone:
    """Cone generated by the images of the generators of c"""
    if m.cols != c.ambient_dim:
        raise DimensionMismatchError(
            f"map with {m.cols} columns on a cone in Q^{c.ambient_dim}"
        )
    return from_generators([m.apply(g) for g in c.generators], m.rows)


def interior_point(c: Cone) -> Tuple[Optional[Vector], bool]:
    """
    Point in the relative interior of c

    Returns:
        (sum of the generators or None for the zero cone,
         True when c is full dimensional)
    """
    if c.is_zero():
        return None, c.ambient_dim == 0
    point = c.generators[0]
    for g in c.generators[1:]:
        point = vec_add(point, g)
    full = span(c.generators, c.ambient_dim).is_full()
    return point, full
