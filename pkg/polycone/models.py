"""
Cone Models
Rational polyhedral cones held in both generator and inequality form
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

from exactalg import Vector, as_vector, dot


@dataclass(frozen=True)
class Cone:
    """
    Closed convex cone {x : <a, x> <= 0 for every inequality a}.

    Both descriptions are canonical: lineality directions come as a primitive
    echelon basis together with their negatives, the remaining generators are
    primitive extreme rays orthogonal to the lineality space, and the list is
    sorted. Inequalities are the canonical generators of the dual cone.
    Equal cones therefore compare equal field by field.
    """

    ambient_dim: int
    generators: Tuple[Vector, ...]
    inequalities: Tuple[Vector, ...]

    def __contains__(self, point) -> bool:
        point = as_vector(point)
        return all(dot(a, point) <= 0 for a in self.inequalities)

    def is_full(self) -> bool:
        return not self.inequalities

    def is_zero(self) -> bool:
        return not self.generators

    def strictly_inside(self, point: Sequence, margin=0) -> bool:
        """Every inequality holds with slack greater than margin"""
        point = as_vector(point)
        return all(dot(a, point) < -margin for a in self.inequalities)

    def to_lists(self) -> dict:
        return {
            "generators": [[int(x) for x in g] for g in self.generators],
            "inequalities": [[int(x) for x in a] for a in self.inequalities],
        }

    def __repr__(self):
        return (
            f"<Cone in Q^{self.ambient_dim} gens={len(self.generators)} "
            f"ineqs={len(self.inequalities)}>"
        )
