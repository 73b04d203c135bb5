"""
Fourier-Motzkin membership test for conic hulls, independent of the
ppl conversion code path
"""

import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

from exactalg import Matrix, as_vector, kernel, primitive_integer_vector, solve

logger = logging.getLogger(__name__)

Row = Tuple[Tuple[Fraction, ...], Fraction]


def _normalize(row: Row) -> Row:
    coeffs, rhs = row
    scaled = primitive_integer_vector(coeffs + (rhs,))
    return scaled[:-1], scaled[-1]


def eliminate(rows: Sequence[Row], variable: int) -> List[Row]:
    """Project the system {c . t <= b} along one variable"""
    plus, minus, rest = [], [], []
    for coeffs, rhs in rows:
        c = coeffs[variable]
        if c > 0:
            plus.append((coeffs, rhs))
        elif c < 0:
            minus.append((coeffs, rhs))
        else:
            rest.append((coeffs, rhs))
    for cp, bp in plus:
        for cm, bm in minus:
            wp, wm = -cm[variable], cp[variable]
            coeffs = tuple(wp * x + wm * y for x, y in zip(cp, cm))
            rest.append((coeffs, wp * bp + wm * bm))
    unique = {}
    for row in rest:
        if any(row[0]):
            unique.setdefault(_normalize(row), row)
        else:
            unique.setdefault(((Fraction(0),) * len(row[0]), row[1]), row)
    return list(unique.values())


def hull_contains(generators: Sequence[Sequence], point: Sequence) -> bool:
    """
    Whether point = sum of l_i g_i for some l >= 0

    The equality constraints are solved exactly first; Fourier-Motzkin
    elimination then decides feasibility of l_0 + N t >= 0 over the kernel
    coordinates t.
    """
    point = as_vector(point)
    gens = [as_vector(g) for g in generators]
    if not gens:
        return all(x == 0 for x in point)
    system = Matrix.from_columns(gens, len(point))
    base = solve(system, point)
    if base is None:
        return False
    free = kernel(system).basis
    # -(l_0 + N t) <= 0  <=>  -N t <= l_0
    rows: List[Row] = [
        (tuple(-n[i] for n in free), base[i]) for i in range(len(gens))
    ]
    for variable in range(len(free)):
        rows = eliminate(rows, variable)
        logger.debug("FM after variable %s: %s rows", variable, len(rows))
    return all(rhs >= 0 for _, rhs in rows)
