"""
Sub-Riemannian distance d(C, E) on SO(3).

The Klein map is a submetry, so d(C, E) is the smaller of the SU(2) distances
of the two lifts of C. distance_so3 evaluates the five cases directly from
the matrix entries (the canonical lift has Re(A) >= 0 and always wins);
distance_so3_via_lifts takes the minimum over both lifts and serves as the
cross-check.
"""
import math
import logging
from dataclasses import dataclass

from geometry.algebra import SO3Element, canonical_a, lift_so3
from distance.su2_distance import (
    CaseLabel, DistanceResult, F1, F2, t1, t2,
    beta_bound, case5_target, classify_su2, distance_su2, solve_monotone,
)
from utils.helpers import sgn, wrap_angle

logger = logging.getLogger(__name__)

IDENTITY_TOL = 1e-12
HALF_TURN_TOL = 1e-9


@dataclass(frozen=True)
class LiftComparison:
    """Solutions for the winning lift (beta1, t1) and the rejected lift (beta2, t2)."""
    case_label: CaseLabel
    beta1: float
    t1: float
    beta2: float
    t2: float


def classify_so3(C: SO3Element) -> CaseLabel:
    """
    Cases 1-5 decided on the canonical lift with the SU(2) thresholds, so that
    the direct route and the minimum over lifts agree next to c11 = -1 and
    c11 = 1, where 1 + c11 and 1 - c11 carry no significant digits.
    """
    if C.is_identity(IDENTITY_TOL):
        return CaseLabel.IDENTITY
    lift, _ = lift_so3(C)
    return classify_su2(lift)


def boundary_indicator(C: SO3Element) -> float:
    """
    cos(pi sqrt((1+c11)/2)) + (c22+c33)/(1+c11): positive for short, negative
    for long. Evaluated as cos(pi |A|) + cos(2 arg A) on the canonical lift.
    """
    a_re, a_im = canonical_a(C)
    abs_sq = a_re * a_re + a_im * a_im
    if abs_sq == 0.0:
        raise ValueError("Error: boundary indicator is undefined for c11 = -1")
    return math.cos(math.pi * math.sqrt(abs_sq)) + (a_re * a_re - a_im * a_im) / abs_sq


def _abs_a(C: SO3Element) -> float:
    """sqrt((1+c11)/2), read from the canonical lift."""
    return math.hypot(*canonical_a(C))


def _unit_angle(C: SO3Element) -> float:
    """arg(A) of the canonical lift, in [-pi/2, pi/2]."""
    a_re, a_im = canonical_a(C)
    return math.atan2(a_im, a_re)


def _case2_beta(angle: float) -> float:
    # pi beta / sqrt(1+beta^2) = angle, |angle| < pi
    return angle / math.sqrt((math.pi - angle) * (math.pi + angle))


def _phi0(C: SO3Element, beta: float, t: float) -> float | None:
    lift, _ = lift_so3(C)
    if lift.abs_b == 0.0:
        return None
    return wrap_angle(math.atan2(lift.b_im, lift.b_re) - 0.5 * beta * t)


def distance_so3(C: SO3Element) -> DistanceResult:
    case = classify_so3(C)

    if case is CaseLabel.IDENTITY:
        result = DistanceResult(0.0, case, None, None)

    elif case is CaseLabel.CASE1_AZERO:
        # both lifts (0, B), (0, -B) are at distance pi
        result = DistanceResult(math.pi, case, 0.0, None)

    elif case is CaseLabel.CASE2_ABSAONE:
        a_re, a_im = canonical_a(C)
        # cos F = -Re(A), sin F = Im(A)
        angle = math.atan2(a_im, -a_re)
        if abs(angle) >= math.pi:
            result = DistanceResult(0.0, CaseLabel.IDENTITY, None, None)
        else:
            beta = _case2_beta(angle)
            t = 2.0 * math.pi / math.sqrt(1.0 + beta * beta)
            result = DistanceResult(t, case, beta, None)

    else:
        abs_a = _abs_a(C)
        theta = _unit_angle(C)
        if case is CaseLabel.CASE3_BOUNDARY:
            # pi sqrt((1-c11)/2)
            t = math.pi * math.sqrt((1.0 - abs_a) * (1.0 + abs_a))
            a_re, a_im = canonical_a(C)
            beta = sgn(a_im) * beta_bound(abs_a)
        elif case is CaseLabel.CASE4_SHORT:
            beta = solve_monotone(F1, abs_a, theta)
            t = t1(beta, abs_a)
        else:
            beta = solve_monotone(F2, abs_a, case5_target(theta))
            t = t2(beta, abs_a)

        # a half-turn has Re(A) = 0 and both lifts tie: no unique minimizer
        half_turn = abs(canonical_a(C)[0]) <= HALF_TURN_TOL
        result = DistanceResult(t, case, beta, None if half_turn else _phi0(C, beta, t))

    logger.debug(f"distance_so3: c11={C.c(1, 1)!r} -> {result}")
    return result


def distance_so3_via_lifts(C: SO3Element) -> float:
    lift, negated = lift_so3(C)
    return min(distance_su2(lift).t, distance_su2(negated).t)


def distance_so3_pair(C1: SO3Element, C2: SO3Element) -> float:
    """d(C1, C2) = d(C1^T C2, E) by left invariance."""
    return distance_so3(C1.T @ C2).t


def distance_so3_batch(matrices: list[SO3Element]) -> list[DistanceResult]:
    return [distance_so3(C) for C in matrices]


def lift_comparison(C: SO3Element) -> LiftComparison:
    """
    Solves both systems of cases 2, 4 and 5: the one of the canonical lift
    (beta1, t1) and the one of the negated lift (beta2, t2). The distance is t1
    and t1 < t2 holds whenever C is not a half-turn.
    """
    case = classify_so3(C)
    a_re, a_im = canonical_a(C)

    if case is CaseLabel.CASE2_ABSAONE:
        beta1 = _case2_beta(math.atan2(a_im, -a_re))
        # negated lift: cos F = Re(A), sin F = -Im(A)
        beta2 = _case2_beta(math.atan2(-a_im, a_re))
        return LiftComparison(case, beta1, 2.0 * math.pi / math.sqrt(1.0 + beta1 * beta1),
                              beta2, 2.0 * math.pi / math.sqrt(1.0 + beta2 * beta2))

    abs_a = _abs_a(C)
    theta = _unit_angle(C)
    # arg(-A) in (-pi, pi]
    theta_neg = theta - math.pi if theta > 0 else theta + math.pi

    if case is CaseLabel.CASE4_SHORT:
        beta1 = solve_monotone(F1, abs_a, theta)
        beta2 = solve_monotone(F2, abs_a, case5_target(theta_neg))
        return LiftComparison(case, beta1, t1(beta1, abs_a), beta2, t2(beta2, abs_a))

    if case is CaseLabel.CASE5_LONG:
        beta1 = solve_monotone(F2, abs_a, case5_target(theta))
        beta2 = solve_monotone(F2, abs_a, case5_target(theta_neg))
        return LiftComparison(case, beta1, t2(beta1, abs_a), beta2, t2(beta2, abs_a))

    raise ValueError(f"Error: lift comparison is defined for cases 2, 4 and 5, got {case.value}")


def system_residuals(C: SO3Element, result: DistanceResult) -> tuple[float, float]:
    """
    Residuals of the cosine/sine equations of the short (case 4) or long
    (case 5) system written in matrix entries, at the returned beta.
    """
    if result.case_label not in (CaseLabel.CASE4_SHORT, CaseLabel.CASE5_LONG):
        raise ValueError(f"Error: system residuals exist only for cases 4 and 5, got {result.case_label.value}")
    c11, c22, c33 = C.c(1, 1), C.c(2, 2), C.c(3, 3)
    abs_a = _abs_a(C)
    cos_rhs = math.sqrt(max(0.0, (1.0 + c11 + c22 + c33) / (2.0 * (1.0 + c11))))
    sin_rhs = sgn(C.c(3, 2) - C.c(2, 3)) * math.sqrt(max(0.0, (1.0 + c11 - c22 - c33) / (2.0 * (1.0 + c11))))
    if result.case_label is CaseLabel.CASE4_SHORT:
        angle = F1(result.beta, abs_a)
        return math.cos(angle) - cos_rhs, math.sin(angle) - sin_rhs
    angle = F2(result.beta, abs_a)
    return math.cos(angle) + cos_rhs, math.sin(angle) - sin_rhs
