"""
Error types
Every failure raised by the analysis pipeline derives from SphericalError
"""

from typing import Optional, Sequence, Tuple


class SphericalError(Exception):
    """Base error; `stage` names the pipeline step that failed"""

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message)
        self.stage = stage


class DimensionMismatchError(SphericalError, ValueError):
    """Operands live in different ambient spaces"""


class NotDirectSumError(SphericalError, ValueError):
    """A projection was requested along a non-complementary subspace"""


class RealizationError(SphericalError):
    """Matrix basis does not define a theta-stable Lie algebra"""


class RootDatumError(SphericalError):
    """Split Cartan or positivity seed is unusable"""


class WeylBoundError(SphericalError):
    """Weyl group enumeration exceeded the configured bound"""


class OpenOrbitError(SphericalError):
    """No Weyl twist of the minimal parabolic has an open orbit through the base point"""


class AdaptedParabolicError(SphericalError):
    """Zero or several standard parabolics pass the adaptedness test"""

    def __init__(self, message: str, passing: Sequence[Tuple[int, ...]] = ()):
        super().__init__(message, stage="adapted_parabolic")
        self.passing = list(passing)


class ConsistencyError(SphericalError):
    """An internal invariant failed; signals a bug in an earlier stage"""


class ExteriorPowerTooLargeError(SphericalError):
    """The wedge expansion would exceed the configured number of terms"""

    def __init__(self, message: str, bound: int):
        super().__init__(message, stage="plucker_oracle")
        self.bound = bound


class DegenerationError(SphericalError, ValueError):
    """Invalid direction for a Grassmannian degeneration"""


class SpaceParseError(SphericalError, ValueError):
    """Malformed space description; `location` points into the input"""

    def __init__(self, message: str, location: str = ""):
        text = f"{location}: {message}" if location else message
        super().__init__(text, stage="parse")
        self.location = location


class AnalysisError(SphericalError):
    """A pipeline stage failed; the original exception is chained"""


# Failures caused by the input rather than by the code
INPUT_ERRORS = (
    SpaceParseError,
    DimensionMismatchError,
    RealizationError,
    RootDatumError,
    WeylBoundError,
    OpenOrbitError,
    AdaptedParabolicError,
    ExteriorPowerTooLargeError,
    DegenerationError,
)
