"""
Space Description Schema
JSON input format for a spherical space: the algebra, the subalgebra, an
optional split Cartan with positivity seed, and per-file analysis options.

Rational entries are written as "p/q" strings or JSON integers; floats are
rejected so every value parses exactly. See docs/SPACE_FORMAT.md.
"""

from typing import Annotated, Any, List, Literal, Optional, Union

from pydantic import (AfterValidator, BaseModel, BeforeValidator, ConfigDict,
                      Discriminator, Field, Tag, ValidationError,
                      model_validator)

from errors import SpaceParseError
from exactalg.models import to_rational


def _canonical_rational(value: Any) -> str:
    if isinstance(value, float):
        raise ValueError(f"float {value!r} is not exact; write rationals as strings like \"1/3\"")
    try:
        return str(to_rational(value))
    except TypeError as exc:
        raise ValueError(str(exc)) from exc


def _square(rows: List[List[str]]) -> List[List[str]]:
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ValueError(f"matrix must be square and nonempty, got {len(rows)} rows")
    return rows


Rational = Annotated[str, BeforeValidator(_canonical_rational)]
MatrixRows = Annotated[List[List[Rational]], AfterValidator(_square)]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


# ============================================================================
# ALGEBRA
# ============================================================================


class SlAlgebra(_Strict):
    family: Literal["sl"]
    n: int = Field(ge=2)

    @property
    def matrix_size(self) -> int:
        return self.n


class SoAlgebra(_Strict):
    family: Literal["so"]
    p: int = Field(ge=0)
    q: int = Field(ge=0)

    @property
    def matrix_size(self) -> int:
        return self.p + self.q


class SpAlgebra(_Strict):
    family: Literal["sp"]
    n: int = Field(ge=1)

    @property
    def matrix_size(self) -> int:
        return 2 * self.n


class ProductAlgebra(_Strict):
    family: Literal["product"]
    factors: List["FamilyAlgebra"] = Field(min_length=2)

    @property
    def matrix_size(self) -> int:
        return sum(f.matrix_size for f in self.factors)


class BasisAlgebra(_Strict):
    basis: List[MatrixRows] = Field(min_length=1)

    @property
    def matrix_size(self) -> int:
        return len(self.basis[0])

    @model_validator(mode="after")
    def _same_size(self):
        for k, m in enumerate(self.basis):
            if len(m) != self.matrix_size:
                raise ValueError(
                    f"basis.{k}: {len(m)}x{len(m)} matrix among "
                    f"{self.matrix_size}x{self.matrix_size} matrices"
                )
        return self


def _algebra_kind(value: Any) -> str:
    if isinstance(value, dict):
        return value.get("family", "basis")
    return getattr(value, "family", "basis")


FamilyAlgebra = Annotated[
    Union[
        Annotated[SlAlgebra, Tag("sl")],
        Annotated[SoAlgebra, Tag("so")],
        Annotated[SpAlgebra, Tag("sp")],
        Annotated[ProductAlgebra, Tag("product")],
    ],
    Discriminator(_algebra_kind),
]

AlgebraSpec = Annotated[
    Union[
        Annotated[SlAlgebra, Tag("sl")],
        Annotated[SoAlgebra, Tag("so")],
        Annotated[SpAlgebra, Tag("sp")],
        Annotated[ProductAlgebra, Tag("product")],
        Annotated[BasisAlgebra, Tag("basis")],
    ],
    Discriminator(_algebra_kind),
]

ProductAlgebra.model_rebuild()


# ============================================================================
# SUBALGEBRA
# ============================================================================


class BasisSubalgebra(_Strict):
    basis: List[MatrixRows]


class InvolutionSubalgebra(_Strict):
    """h = {X : -J X^T J = X}"""

    symmetric_involution: MatrixRows


def _subalgebra_kind(value: Any) -> str:
    if isinstance(value, str):
        return "diagonal"
    if isinstance(value, dict):
        return "involution" if "symmetric_involution" in value else "basis"
    return "involution" if isinstance(value, InvolutionSubalgebra) else "basis"


SubalgebraSpec = Annotated[
    Union[
        Annotated[Literal["diagonal"], Tag("diagonal")],
        Annotated[BasisSubalgebra, Tag("basis")],
        Annotated[InvolutionSubalgebra, Tag("involution")],
    ],
    Discriminator(_subalgebra_kind),
]


# ============================================================================
# DESCRIPTION
# ============================================================================


class AnalysisOptions(_Strict):
    """Per-file overrides of the numeric check; command line flags win"""

    samples: Optional[int] = Field(default=None, ge=0)
    seed: Optional[int] = None
    tmax: Optional[int] = Field(default=None, ge=1)
    converge_tol: Optional[float] = Field(default=None, gt=0)
    diverge_tol: Optional[float] = Field(default=None, gt=0)
    skip_numeric: bool = False


class SpaceDescription(_Strict):
    name: str = ""
    description: str = ""
    algebra: AlgebraSpec
    subalgebra: SubalgebraSpec
    cartan: Optional[List[MatrixRows]] = None
    seed: Optional[List[Rational]] = None
    options: AnalysisOptions = Field(default_factory=AnalysisOptions)

    @model_validator(mode="after")
    def _matrix_sizes(self):
        size = self.algebra.matrix_size
        located = []
        if isinstance(self.subalgebra, BasisSubalgebra):
            located += [(f"subalgebra.basis.{k}", m) for k, m in enumerate(self.subalgebra.basis)]
        elif isinstance(self.subalgebra, InvolutionSubalgebra):
            located.append(("subalgebra.symmetric_involution", self.subalgebra.symmetric_involution))
        located += [(f"cartan.{k}", m) for k, m in enumerate(self.cartan or [])]
        for where, m in located:
            if len(m) != size:
                raise ValueError(
                    f"{where}: {len(m)}x{len(m)} matrix for an algebra of "
                    f"{size}x{size} matrices"
                )
        return self


_UNION_TAGS = {"sl", "so", "sp", "product", "basis", "involution", "diagonal"}


def _is_union_tag(loc, k: int) -> bool:
    if loc[k] not in _UNION_TAGS or k == 0:
        return False
    if loc[k - 1] in ("algebra", "subalgebra"):
        return True
    return isinstance(loc[k - 1], int) and k >= 2 and loc[k - 2] == "factors"


def _location(loc) -> str:
    parts = []
    for k, item in enumerate(loc):
        if _is_union_tag(loc, k):
            continue
        if isinstance(item, int):
            parts.append(f"[{item}]")
        else:
            parts.append(("." if parts else "") + str(item))
    return "".join(parts)


def parse_space(text: Union[str, bytes]) -> SpaceDescription:
    """
    Parse a JSON space description

    Raises:
        SpaceParseError: malformed JSON, malformed rational, float entry,
            non-square or size-inconsistent matrix, unknown family; the
            location points at the first offending field
    """
    try:
        return SpaceDescription.model_validate_json(text)
    except ValidationError as exc:
        first = exc.errors()[0]
        message = first["msg"]
        if message.startswith("Value error, "):
            message = message[len("Value error, "):]
        raise SpaceParseError(message, location=_location(first["loc"])) from exc


def emit_space(desc: SpaceDescription) -> str:
    """Canonical JSON text; parse_space(emit_space(d)) == d"""
    return desc.model_dump_json(indent=2, exclude_none=True)
