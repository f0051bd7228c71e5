"""
Unit-speed sub-Riemannian geodesics from the identity.

A geodesic is fixed by the horizontal direction angle phi0 and the vertical
momentum beta:

    gamma(t) = exp(t (cos(phi0) p1 + sin(phi0) p2 + beta k)) exp(-t beta k)

t is both the parameter and the length. geodesic_point evaluates the closed
form for A and B; geodesic_point_exp multiplies the two exponentials and is
kept as an independent check of the closed form.
"""
import math
import logging
from dataclasses import dataclass
import numpy as np

from geometry.algebra import (
    SU2Element, SO3Element, AlgebraVector, SU2_IDENTITY,
    su2_exp, su2_mul, klein_omega,
)
from utils.helpers import wrap_angle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeodesicParams:
    phi0: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.phi0) and math.isfinite(self.beta)):
            raise ValueError(f"Error: geodesic parameters must be finite, got phi0={self.phi0}, beta={self.beta}")
        object.__setattr__(self, 'phi0', wrap_angle(float(self.phi0)))
        object.__setattr__(self, 'beta', float(self.beta))


def cut_time_bound(beta: float) -> float:
    """Upper bound 2*pi/sqrt(1+beta^2) on the length of a minimizing geodesic."""
    if not math.isfinite(beta):
        raise ValueError(f"Error: cut_time_bound needs a finite beta, got {beta}")
    return 2.0 * math.pi / math.sqrt(1.0 + beta * beta)


def _check_time(t: float):
    if not math.isfinite(t) or t < 0:
        raise ValueError(f"Error: geodesic time must be finite and >= 0, got {t}")


def geodesic_batch(phi0, beta, t):
    """
    Vectorized closed form. Arguments broadcast against each other.
    Returns the arrays (A_re, A_im, B_re, B_im).
    """
    phi0, beta, t = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (phi0, beta, t)))
    omega = np.sqrt(1.0 + beta * beta)
    half = 0.5 * t * omega
    s, c = np.sin(half), np.cos(half)
    spin = 0.5 * beta * t
    s_spin, c_spin = np.sin(spin), np.cos(spin)
    ratio = beta / omega
    a_re = ratio * s * s_spin + c * c_spin
    a_im = ratio * s * c_spin - c * s_spin
    b_abs = s / omega
    b_arg = spin + phi0
    return a_re, a_im, b_abs * np.cos(b_arg), b_abs * np.sin(b_arg)


def geodesic_point(p: GeodesicParams, t: float) -> SU2Element:
    _check_time(t)
    if t == 0.0:
        return SU2_IDENTITY
    omega = math.sqrt(1.0 + p.beta * p.beta)
    half = 0.5 * t * omega
    s, c = math.sin(half), math.cos(half)
    spin = 0.5 * p.beta * t
    s_spin, c_spin = math.sin(spin), math.cos(spin)
    ratio = p.beta / omega
    b_abs = s / omega
    return SU2Element(ratio * s * s_spin + c * c_spin,
                      ratio * s * c_spin - c * s_spin,
                      b_abs * math.cos(spin + p.phi0),
                      b_abs * math.sin(spin + p.phi0))


def geodesic_point_exp(p: GeodesicParams, t: float) -> SU2Element:
    _check_time(t)
    direction = AlgebraVector(math.cos(p.phi0), math.sin(p.phi0), p.beta)
    vertical = AlgebraVector(0.0, 0.0, -p.beta)
    return su2_mul(su2_exp(direction, t), su2_exp(vertical, t))


def geodesic_point_so3(p: GeodesicParams, t: float) -> SO3Element:
    return klein_omega(geodesic_point(p, t))


def geodesic_trace(p: GeodesicParams, t_max: float, steps: int) -> tuple[np.ndarray, tuple]:
    """Samples the geodesic at steps+1 uniform times on [0, t_max]."""
    if steps <= 0:
        raise ValueError(f"Error: steps must be positive, got {steps}")
    if not math.isfinite(t_max) or t_max <= 0:
        raise ValueError(f"Error: t_max must be positive, got {t_max}")
    times = np.linspace(0.0, t_max, steps + 1)
    logger.debug(f"geodesic_trace: phi0={p.phi0}, beta={p.beta}, {steps + 1} samples up to t={t_max}")
    return times, geodesic_batch(p.phi0, p.beta, times)
