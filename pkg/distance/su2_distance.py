"""
Sub-Riemannian distance rho(g, e) on SU(2).

For 0 < |A| < 1 the distance is reached by a geodesic whose vertical momentum
beta lies in [-b*, b*], b* = |A| / sqrt(1 - |A|^2). With

    z(beta) = sqrt((1 - |A|^2)(1 + beta^2))

the lengths are t1 = 2 arcsin(z) / sqrt(1+beta^2) (short geodesics) and
t2 = 2 (pi - arcsin(z)) / sqrt(1+beta^2) (long geodesics), and beta is fixed by
requiring that the argument of A equals F1(beta) resp. F2(beta), both odd and
strictly increasing. The arcsines are evaluated as atan2 of a pair whose
second entry is built from (b* - |beta|)(b* + |beta|), so they stay accurate
next to the endpoints where arcsin has infinite slope.
"""
import math
import logging
from enum import Enum
from dataclasses import dataclass
from typing import Callable

from geometry.algebra import SU2Element, su2_inv, su2_mul
from geometry.geodesics import GeodesicParams
from utils.errors import DomainViolation, TargetOutOfRange
from utils.helpers import sgn, wrap_angle

logger = logging.getLogger(__name__)

EPS_CASE = 1e-9
ABS_A_ZERO = 1e-12
ABS_A_ONE = 1.0 - 1e-12
BETA_DOMAIN_TOL = 1e-12
RANGE_TOL = 1e-10
MAX_BISECTION_ITER = 200


class CaseLabel(str, Enum):
    IDENTITY = "Identity"
    CASE1_AZERO = "Case1_Azero"
    CASE2_ABSAONE = "Case2_AbsAone"
    CASE3_BOUNDARY = "Case3_Boundary"
    CASE4_SHORT = "Case4_Short"
    CASE5_LONG = "Case5_Long"


@dataclass(frozen=True)
class DistanceResult:
    """Distance t with the branch that produced it. beta/phi0 are None when not unique."""
    t: float
    case_label: CaseLabel
    beta: float | None
    phi0: float | None

    @property
    def params(self) -> GeodesicParams | None:
        if self.beta is None or self.phi0 is None:
            return None
        return GeodesicParams(self.phi0, self.beta)

    def as_dict(self) -> dict:
        return {
            't': self.t,
            'case': self.case_label.value,
            'beta': self.beta,
            'phi0': self.phi0,
        }


def _one_minus_sq(abs_a: float) -> float:
    return (1.0 - abs_a) * (1.0 + abs_a)


def beta_bound(abs_a: float) -> float:
    """b* = |A| / sqrt(1 - |A|^2), the half-width of the beta domain."""
    if not (0.0 < abs_a < 1.0):
        raise DomainViolation(f"Error: |A| must lie in (0, 1), got {abs_a}")
    return abs_a / math.sqrt(_one_minus_sq(abs_a))


def _domain(beta: float, abs_a: float) -> tuple[float, float, float]:
    b_star = beta_bound(abs_a)
    excess = abs(beta) - b_star
    if excess > BETA_DOMAIN_TOL * max(1.0, b_star):
        raise DomainViolation(
            f"Error: beta={beta!r} outside [-b*, b*] with b*={b_star!r} for |A|={abs_a!r}")
    if excess > 0:
        beta = math.copysign(b_star, beta)
    return beta, b_star, _one_minus_sq(abs_a)


def _gap(beta: float, b_star: float) -> float:
    # b*^2 - beta^2, exact zero at the endpoints
    m = abs(beta)
    return max(0.0, b_star - m) * (b_star + m)


def _arcsin_z(beta: float, b_star: float, s: float) -> float:
    # arcsin(sqrt(s (1 + beta^2))); the cosine side is sqrt(s (b*^2 - beta^2))
    return math.atan2(math.sqrt(s * (1.0 + beta * beta)), math.sqrt(s * _gap(beta, b_star)))


def _arcsin_ratio(beta: float, b_star: float) -> float:
    # arcsin(beta sqrt(1 - |A|^2) / |A|) = arcsin(beta / b*)
    return math.atan2(beta, math.sqrt(_gap(beta, b_star)))


def t1(beta: float, abs_a: float) -> float:
    beta, b_star, s = _domain(beta, abs_a)
    return 2.0 / math.sqrt(1.0 + beta * beta) * _arcsin_z(beta, b_star, s)


def t2(beta: float, abs_a: float) -> float:
    beta, b_star, s = _domain(beta, abs_a)
    return 2.0 / math.sqrt(1.0 + beta * beta) * (math.pi - _arcsin_z(beta, b_star, s))


def F1(beta: float, abs_a: float) -> float:
    beta, b_star, s = _domain(beta, abs_a)
    omega = math.sqrt(1.0 + beta * beta)
    return -beta / omega * _arcsin_z(beta, b_star, s) + _arcsin_ratio(beta, b_star)


def F2(beta: float, abs_a: float) -> float:
    beta, b_star, s = _domain(beta, abs_a)
    omega = math.sqrt(1.0 + beta * beta)
    return beta / omega * (math.pi - _arcsin_z(beta, b_star, s)) + _arcsin_ratio(beta, b_star)


def t1_derivative(beta: float, abs_a: float) -> float:
    """dt1/dbeta; infinite at beta = +-b*."""
    beta, b_star, s = _domain(beta, abs_a)
    omega = math.sqrt(1.0 + beta * beta)
    z = math.sqrt(s * (1.0 + beta * beta))
    cos_side = math.sqrt(s * _gap(beta, b_star))
    if cos_side == 0.0:
        return math.copysign(math.inf, beta)
    arcsin_z = math.atan2(z, cos_side)
    return 2.0 * beta / omega ** 3 * (z - cos_side * arcsin_z) / cos_side


def solve_monotone(f: Callable[[float, float], float], abs_a: float, target: float) -> float:
    """
    Solves f(beta) = target for f in {F1, F2} by bisection on [-b*, b*].
    Raises TargetOutOfRange when the target lies outside f's range.
    """
    b_star = beta_bound(abs_a)
    lo, hi = -b_star, b_star
    f_lo, f_hi = f(lo, abs_a), f(hi, abs_a)
    if target > f_hi + RANGE_TOL or target < f_lo - RANGE_TOL:
        raise TargetOutOfRange(
            f"Error: target {target!r} outside [{f_lo!r}, {f_hi!r}] of {f.__name__} for |A|={abs_a!r}")
    if target >= f_hi:
        return hi
    if target <= f_lo:
        return lo

    for _ in range(MAX_BISECTION_ITER):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        f_mid = f(mid, abs_a)
        if f_mid == target:
            return mid
        if f_mid < target:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid

    beta = lo if abs(f_lo - target) <= abs(f_hi - target) else hi
    residual = abs(f(beta, abs_a) - target)
    if residual > 1e-12:
        # only happens with the target next to the range endpoints, where f is vertical
        logger.debug(f"solve_monotone: {f.__name__} residual {residual:.2e} at beta={beta!r}, |A|={abs_a!r}")
    return beta


def case5_target(theta: float) -> float:
    """Angle that F2 must reach for arg(A) = theta: cos = -cos(theta), sin = sin(theta)."""
    return math.pi - theta if theta >= 0 else -math.pi - theta


def classify_su2(g: SU2Element) -> CaseLabel:
    abs_a = g.abs_a
    if abs_a <= ABS_A_ZERO:
        return CaseLabel.CASE1_AZERO
    if abs_a >= ABS_A_ONE:
        return CaseLabel.CASE2_ABSAONE
    theta = math.atan2(g.a_im, g.a_re)
    boundary = 0.5 * math.pi * (1.0 - abs_a)
    if abs(theta) < boundary - EPS_CASE:
        return CaseLabel.CASE4_SHORT
    if abs(theta) > boundary + EPS_CASE:
        return CaseLabel.CASE5_LONG
    return CaseLabel.CASE3_BOUNDARY


def _phi0(g: SU2Element, beta: float, t: float) -> float:
    return wrap_angle(math.atan2(g.b_im, g.b_re) - 0.5 * beta * t)


def distance_su2(g: SU2Element) -> DistanceResult:
    case = classify_su2(g)
    abs_a = g.abs_a
    theta = math.atan2(g.a_im, g.a_re)

    if case is CaseLabel.CASE1_AZERO:
        # sin(t sqrt(1+beta^2)/2) = sqrt(1+beta^2) forces beta = 0, t = pi
        result = DistanceResult(math.pi, case, 0.0, _phi0(g, 0.0, math.pi))

    elif case is CaseLabel.CASE2_ABSAONE:
        arg_abs = abs(theta)
        t = 2.0 * math.sqrt(arg_abs * (2.0 * math.pi - arg_abs))
        if t == 0.0:
            result = DistanceResult(0.0, case, None, None)
        else:
            # sign of beta from Re(A) = -cos(pi beta/w), Im(A) = sin(pi beta/w)
            beta = sgn(theta) * math.sqrt(max(0.0, 4.0 * math.pi ** 2 - t * t)) / t
            result = DistanceResult(t, case, beta, None)

    elif case is CaseLabel.CASE3_BOUNDARY:
        t = math.pi * math.sqrt(_one_minus_sq(abs_a))
        beta = sgn(g.a_im) * beta_bound(abs_a)
        result = DistanceResult(t, case, beta, _phi0(g, beta, t))

    elif case is CaseLabel.CASE4_SHORT:
        beta = solve_monotone(F1, abs_a, theta)
        t = t1(beta, abs_a)
        result = DistanceResult(t, case, beta, _phi0(g, beta, t))

    else:
        beta = solve_monotone(F2, abs_a, case5_target(theta))
        t = t2(beta, abs_a)
        result = DistanceResult(t, case, beta, _phi0(g, beta, t))

    logger.debug(f"distance_su2: |A|={abs_a!r}, arg(A)={theta!r} -> {result}")
    return result


def system_residuals(g: SU2Element, result: DistanceResult) -> tuple[float, float]:
    """
    Residuals of the cosine/sine equations solved in case 4 (short) or
    case 5 (long) when (beta, t) of `result` are substituted back.
    """
    if result.case_label not in (CaseLabel.CASE4_SHORT, CaseLabel.CASE5_LONG):
        raise ValueError(f"Error: system residuals exist only for cases 4 and 5, got {result.case_label.value}")
    abs_a = g.abs_a
    cos_a, sin_a = g.a_re / abs_a, g.a_im / abs_a
    if result.case_label is CaseLabel.CASE4_SHORT:
        angle = F1(result.beta, abs_a)
        return math.cos(angle) - cos_a, math.sin(angle) - sin_a
    angle = F2(result.beta, abs_a)
    return math.cos(angle) + cos_a, math.sin(angle) - sin_a


def distance_su2_pair(g: SU2Element, h: SU2Element) -> float:
    """rho(g, h) = rho(g^-1 h, e) by left invariance."""
    return distance_su2(su2_mul(su2_inv(g), h)).t
