"""
Degeneration Models
Trajectories of h under exp(t ad X) in the Grassmannian and the summary of a
cone verification run
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple


class Verdict(Enum):
    """Outcome of a degeneration trajectory"""

    CONVERGED = "converged"
    DIVERGED = "diverged"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Trajectory:
    """Distances from exp(t ad X) h to h_lim along a schedule of times"""

    X: Tuple[float, ...]  # unit vector in g-coordinates
    times: Tuple[float, ...]
    distances: Tuple[float, ...]
    verdict: Verdict

    @property
    def final_distance(self) -> float:
        return self.distances[-1]

    def max_distance_from(self, t_min: float) -> float:
        return max(d for t, d in zip(self.times, self.distances) if t >= t_min)

    def min_distance_between(self, t_min: float, t_max: float) -> float:
        return min(d for t, d in zip(self.times, self.distances) if t_min <= t <= t_max)


@dataclass(frozen=True)
class VerificationSummary:
    interior: Tuple[Trajectory, ...]
    exterior: Tuple[Trajectory, ...]
    interior_available: bool = True

    @property
    def converged_count(self) -> int:
        return sum(1 for t in self.interior if t.verdict is Verdict.CONVERGED)

    @property
    def diverged_count(self) -> int:
        return sum(1 for t in self.exterior if t.verdict is Verdict.DIVERGED)

    @property
    def passed(self) -> bool:
        return self.converged_count == len(self.interior) and self.diverged_count == len(
            self.exterior
        )

    def to_dict(self) -> dict:
        return {
            "interior_samples": len(self.interior),
            "interior_converged": self.converged_count,
            "exterior_samples": len(self.exterior),
            "exterior_diverged": self.diverged_count,
            "interior_available": self.interior_available,
            "passed": self.passed,
        }
