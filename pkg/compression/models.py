"""
Compression Models
Graph map of h over u_bar and the compression cone report
"""

from dataclasses import dataclass, field
from typing import Mapping, Optional, Tuple

from exactalg import Subspace, Vector
from liecore.models import Covector
from polycone.models import Cone


@dataclass(frozen=True)
class GraphMapEntry:
    """
    Y = X_-alpha + D_alpha + sum of X_beta, the element of h over one root vector
    """

    alpha: Covector
    basis_vector_index: int
    Y: Vector
    D_alpha: Vector
    u_components: Tuple[Tuple[Covector, Vector], ...]

    @property
    def has_D(self) -> bool:
        return any(x != 0 for x in self.D_alpha)


@dataclass(frozen=True, eq=False)
class GraphMapData:
    entries: Tuple[GraphMapEntry, ...]
    # every root restricted to the echelon basis of a_Z
    restrictions: Mapping[Covector, Covector] = field(default_factory=dict)

    def restrict(self, root: Covector) -> Covector:
        return self.restrictions[root]


@dataclass(frozen=True, eq=False)
class CompressionReport:
    monoid_generators: Tuple[Covector, ...]
    cone: Cone
    edge: Subspace
    sharp: bool
    wavefront: bool
    chamber_contained: bool
    edge_contains_a_tilde: Optional[bool]
    h_lim: Subspace
    h_lim_is_h: bool
    oracle_cone: Cone
    oracle_agrees: bool
    oracle_support: Tuple[Covector, ...]
    rank: int

    @property
    def edge_dim(self) -> int:
        return self.edge.dim
