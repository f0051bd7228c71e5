"""
Non-uniqueness of the older arctangent/sine system for the SU(2) distance.

The system

    -beta t/2 + arctan(beta/w tan(t w/2)) = arg(A)
    sin(t w/2) / w = sqrt(1 - |A|^2),      w = sqrt(1 + beta^2)

is claimed to have a unique solution (beta, t). For arg(A) = 0 and beta = 0
it has the two solutions t = 2 arcsin(sqrt(1-|A|^2)) and 2 pi minus that,
while the distance is only the first one.
"""
import math
import logging
from dataclasses import dataclass

from geometry.algebra import SU2Element
from distance.su2_distance import CaseLabel, DistanceResult, distance_su2
from utils.errors import DomainViolation

logger = logging.getLogger(__name__)


def br_system_residual(t: float, beta: float, abs_a: float, arg_a: float) -> tuple[float, float]:
    """
    Left side minus right side of both equations. The arctangent of the tangent
    follows its continuous branch through t w/2 = pi/2 (it is identically 0
    when beta = 0).
    """
    omega = math.sqrt(1.0 + beta * beta)
    u = 0.5 * t * omega
    branch = math.atan2(beta * math.sin(u), omega * math.cos(u)) if beta != 0.0 else 0.0
    r1 = -0.5 * beta * t + branch - arg_a
    r2 = math.sin(u) / omega - math.sqrt((1.0 - abs_a) * (1.0 + abs_a))
    return r1, r2


@dataclass(frozen=True)
class BrCounterexample:
    abs_a: float
    t_short: float
    t_long: float
    residuals_short: tuple[float, float]
    residuals_long: tuple[float, float]
    distance: DistanceResult

    @property
    def max_residual(self) -> float:
        return max(abs(r) for r in self.residuals_short + self.residuals_long)

    @property
    def distance_matches_short(self) -> bool:
        return abs(self.distance.t - self.t_short) <= 1e-9

    def summary_lines(self) -> list[str]:
        return [
            f"|A|={self.abs_a!r}, arg(A)=0, beta=0",
            f"  t_short={self.t_short!r} residuals={self.residuals_short}",
            f"  t_long={self.t_long!r} residuals={self.residuals_long}",
            f"  distance={self.distance.t!r} ({self.distance.case_label.value})",
        ]


def demonstrate_br_nonuniqueness(abs_a: float) -> BrCounterexample:
    if not (0.0 < abs_a < 1.0):
        raise DomainViolation(f"Error: |A| must lie in (0, 1), got {abs_a}")

    # arcsin(sqrt(1-|A|^2)) as an angle of the right triangle (|A|, sqrt(1-|A|^2))
    half = math.atan2(math.sqrt((1.0 - abs_a) * (1.0 + abs_a)), abs_a)
    t_short, t_long = 2.0 * half, 2.0 * math.pi - 2.0 * half

    g = SU2Element(abs_a, 0.0, math.sqrt((1.0 - abs_a) * (1.0 + abs_a)), 0.0)
    report = BrCounterexample(
        abs_a=abs_a,
        t_short=t_short,
        t_long=t_long,
        residuals_short=br_system_residual(t_short, 0.0, abs_a, 0.0),
        residuals_long=br_system_residual(t_long, 0.0, abs_a, 0.0),
        distance=distance_su2(g),
    )
    if report.distance.case_label is not CaseLabel.CASE4_SHORT:
        logger.info(f"|A|={abs_a!r} falls in {report.distance.case_label.value}, not the short-geodesic case")
    logger.debug("\n".join(report.summary_lines()))
    return report
