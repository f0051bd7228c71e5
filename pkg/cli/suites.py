"""
Verification suites run by `verify`. Each suite takes a sample count and a
seeded generator and returns CheckResult rows; a suite never raises for a
failed comparison, it reports it.
"""
import math
import logging
from dataclasses import dataclass
from typing import Callable
import numpy as np

from geometry.algebra import (
    SU2Element, SO3Element, su2_inv, su2_mul, klein_omega, random_su2, random_so3,
)
from geometry.geodesics import GeodesicParams, geodesic_batch, geodesic_point_exp
from distance.su2_distance import (
    CaseLabel, F1, F2, t1, t2, beta_bound, distance_su2, distance_su2_pair,
    system_residuals as su2_system_residuals,
)
from distance.so3_distance import (
    distance_so3, distance_so3_pair, distance_so3_via_lifts, lift_comparison,
    system_residuals as so3_system_residuals,
)
from distance.cutlocus import CutLocusTag, classify_cut_locus_so3, in_cut_locus_su2_L2
from oracle.shooting import shoot_min_time, shoot_min_time_so3
from oracle.counterexample import demonstrate_br_nonuniqueness
from utils.config import GridSpec
from utils.errors import NoMatchError
from utils.helpers import create_progress_bar

logger = logging.getLogger(__name__)

ORACLE_MAX_TARGETS = 50
ORACLE_SYM_SAMPLES = 20
COUNTEREXAMPLE_ABS_A = 0.6


@dataclass
class CheckResult:
    name: str
    passed: int
    total: int
    max_residual: float
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status} {self.name} {create_progress_bar(self.passed, self.total)} max_residual={self.max_residual:.3e}"
        return f"{text} {self.detail}" if self.detail else text


@dataclass
class SuiteContext:
    n: int
    rng: np.random.Generator
    grid: GridSpec
    workers: int = 1


def _tally(name: str, residuals: list[float], tol: float, detail: str = "") -> CheckResult:
    passed = sum(1 for r in residuals if r <= tol)
    worst = max(residuals) if residuals else 0.0
    return CheckResult(name, passed, len(residuals), worst, detail)


def _axis1_rotation(psi: float) -> SO3Element:
    c, s = math.cos(psi), math.sin(psi)
    return SO3Element(np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]))


def _random_sym_su2(rng: np.random.Generator, n: int) -> list[SU2Element]:
    """Elements with Re(A) = 0, i.e. lifts of half-turns."""
    q = rng.normal(size=(n, 3))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    return [SU2Element(0.0, *row) for row in q.tolist()]


def suite_submetry(ctx: SuiteContext) -> list[CheckResult]:
    rotations = random_so3(ctx.rng, ctx.n)
    agreement = [abs(distance_so3(C).t - distance_so3_via_lifts(C)) for C in rotations]

    # rejected lift never beats the chosen one
    excess = []
    for C in rotations:
        case = distance_so3(C).case_label
        if case in (CaseLabel.CASE2_ABSAONE, CaseLabel.CASE4_SHORT, CaseLabel.CASE5_LONG):
            comparison = lift_comparison(C)
            excess.append(max(0.0, comparison.t1 - comparison.t2))
    return [
        _tally("submetry: direct cases vs minimum over lifts", agreement, 1e-9),
        _tally("submetry: chosen lift not longer than rejected lift", excess, 0.0),
    ]


def suite_lemmas(ctx: SuiteContext) -> list[CheckResult]:
    side = max(2, int(math.isqrt(ctx.n)))
    oddness, monotone, endpoints, identities = [], [], [], []
    for abs_a in np.linspace(0.02, 0.98, side):
        abs_a = float(abs_a)
        b_star = beta_bound(abs_a)
        s = (1.0 - abs_a) * (1.0 + abs_a)
        betas = np.linspace(0.0, b_star, side)
        betas[-1] = b_star

        v_t1 = np.array([t1(b, abs_a) for b in betas])
        v_t2 = np.array([t2(b, abs_a) for b in betas])
        v_f1 = np.array([F1(b, abs_a) for b in betas])
        v_f2 = np.array([F2(b, abs_a) for b in betas])

        oddness.extend(abs(F1(-b, abs_a) + f) for b, f in zip(betas, v_f1))
        oddness.extend(abs(F2(-b, abs_a) + f) for b, f in zip(betas, v_f2))
        oddness.extend(abs(t1(-b, abs_a) - v) for b, v in zip(betas, v_t1))
        oddness.extend(abs(t2(-b, abs_a) - v) for b, v in zip(betas, v_t2))

        # 0 marks a strict step in the expected direction
        monotone.extend(float(d <= 0) for d in np.diff(v_t1))
        monotone.extend(float(d >= 0) for d in np.diff(v_t2))
        monotone.extend(float(d <= 0) for d in np.diff(v_f1))
        monotone.extend(float(d <= 0) for d in np.diff(v_f2))

        half = math.atan2(math.sqrt(s), abs_a)
        endpoints.extend([
            abs(v_t1[0] - 2.0 * half),
            abs(v_t1[-1] - math.pi * math.sqrt(s)),
            abs(v_t2[0] - 2.0 * (math.pi - half)),
            abs(v_t2[-1] - math.pi * math.sqrt(s)),
            abs(v_f1[-1] - 0.5 * math.pi * (1.0 - abs_a)),
            abs(v_f2[-1] - 0.5 * math.pi * (1.0 + abs_a)),
        ])

        omega = np.sqrt(1.0 + betas * betas)
        identities.extend(np.abs(v_t1 + v_t2 - 2.0 * math.pi / omega).tolist())
        identities.extend(np.abs(v_f2 - v_f1 - math.pi * betas / omega).tolist())

    return [
        _tally("lemmas: t1, t2 even and F1, F2 odd", oddness, 1e-14),
        _tally("lemmas: strict monotonicity", monotone, 0.0),
        _tally("lemmas: range endpoints", endpoints, 1e-9),
        _tally("lemmas: t1 + t2 and F2 - F1 identities", identities, 1e-12),
    ]


def suite_br_counterexample(ctx: SuiteContext) -> list[CheckResult]:
    report = demonstrate_br_nonuniqueness(COUNTEREXAMPLE_ABS_A)
    for line in report.summary_lines():
        print(line)
    distance_gap = abs(report.distance.t - report.t_short)
    return [
        _tally("br-counterexample: both times solve the system", [report.max_residual], 1e-10,
               f"t_short={report.t_short:.6f} t_long={report.t_long:.6f}"),
        _tally("br-counterexample: distance is the shorter time", [distance_gap], 1e-9,
               f"distance={report.distance.t:.6f} ({report.distance.case_label.value})"),
    ]


def suite_cutlocus(ctx: SuiteContext) -> list[CheckResult]:
    samples = random_su2(ctx.rng, ctx.n) + _random_sym_su2(ctx.rng, ctx.n)
    disagreements = []
    for g in samples:
        so3_sym = classify_cut_locus_so3(klein_omega(g)).tag is CutLocusTag.SYM
        su2_sym = in_cut_locus_su2_L2(g) is CutLocusTag.SYM
        disagreements.append(float(so3_sym != su2_sym))

    traces = []
    for g in _random_sym_su2(ctx.rng, ctx.n):
        C = klein_omega(g)
        traces.append(abs(float(np.trace(C.m)) + 1.0))

    # local stratum: the direct formula stays on the closed form for axis-1 rotations
    loc_gaps = []
    for psi in ctx.rng.uniform(0.1, 2.0 * math.pi - 0.1, ctx.n):
        C = _axis1_rotation(float(psi))
        if classify_cut_locus_so3(C).tag is not CutLocusTag.LOC:
            loc_gaps.append(math.inf)
            continue
        loc_gaps.append(abs(distance_so3(C).t - distance_so3_via_lifts(C)))

    return [
        _tally("cutlocus: SO(3) and SU(2) symmetric strata agree", disagreements, 0.0),
        _tally("cutlocus: involutions have trace -1", traces, 3e-9),
        _tally("cutlocus: axis-1 rotations are Loc with consistent distance", loc_gaps, 1e-9),
    ]


def suite_geodesics(ctx: SuiteContext) -> list[CheckResult]:
    side = max(2, round(ctx.n ** (1.0 / 3.0)))
    phis = np.linspace(0.0, 2.0 * math.pi, side, endpoint=False)
    betas = np.linspace(-4.0, 4.0, side)
    cross, identity = [], []
    for phi in phis:
        for beta in betas:
            times = np.linspace(0.0, 2.0 * math.pi / math.sqrt(1.0 + beta * beta), side)
            a_re, a_im, b_re, b_im = geodesic_batch(phi, beta, times)
            omega = math.sqrt(1.0 + beta * beta)
            expected_abs_b = np.sin(0.5 * times * omega) / omega
            identity.extend(np.abs(a_re ** 2 + a_im ** 2 - (1.0 - expected_abs_b ** 2)).tolist())
            params = GeodesicParams(float(phi), float(beta))
            for i, t in enumerate(times):
                g = geodesic_point_exp(params, float(t))
                closed = np.array([a_re[i], a_im[i], b_re[i], b_im[i]])
                cross.append(float(np.max(np.abs(g.as_array() - closed))))
    return [
        _tally("geodesics: closed form vs exponential product", cross, 1e-10),
        _tally("geodesics: |A|^2 = 1 - sin^2(t w/2)/w^2", identity, 1e-12),
    ]


def suite_residuals(ctx: SuiteContext) -> list[CheckResult]:
    su2_res, so3_res = [], []
    for g in random_su2(ctx.rng, ctx.n):
        result = distance_su2(g)
        if result.case_label in (CaseLabel.CASE4_SHORT, CaseLabel.CASE5_LONG):
            su2_res.append(max(abs(r) for r in su2_system_residuals(g, result)))
    for C in random_so3(ctx.rng, ctx.n):
        result = distance_so3(C)
        if result.case_label in (CaseLabel.CASE4_SHORT, CaseLabel.CASE5_LONG):
            so3_res.append(max(abs(r) for r in so3_system_residuals(C, result)))
    return [
        _tally("residuals: SU(2) short/long systems", su2_res, 1e-10),
        _tally("residuals: SO(3) short/long systems", so3_res, 1e-10),
    ]


def suite_axioms(ctx: SuiteContext) -> list[CheckResult]:
    triangle, symmetry, conjugation = [], [], []
    g, h, k = (random_su2(ctx.rng, ctx.n) for _ in range(3))
    for a, b, c in zip(g, h, k):
        triangle.append(max(0.0, distance_su2_pair(a, c) - distance_su2_pair(a, b) - distance_su2_pair(b, c)))
        symmetry.append(abs(distance_su2(a).t - distance_su2(su2_inv(a)).t))
        symmetry.append(abs(distance_su2_pair(a, b) - distance_su2_pair(b, a)))

    rotations = [random_so3(ctx.rng, ctx.n) for _ in range(3)]
    for A, B, C in zip(*rotations):
        triangle.append(max(0.0, distance_so3_pair(A, C) - distance_so3_pair(A, B) - distance_so3_pair(B, C)))
        symmetry.append(abs(distance_so3(A).t - distance_so3(A.T).t))
        r = _axis1_rotation(float(ctx.rng.uniform(0.0, 2.0 * math.pi)))
        conjugation.append(abs(distance_so3(r @ A @ r.T).t - distance_so3(A).t))

    # left multiplication by the same element leaves the SU(2) distance unchanged
    for a, b, c in zip(g, h, k):
        conjugation.append(abs(distance_su2_pair(su2_mul(c, a), su2_mul(c, b)) - distance_su2_pair(a, b)))

    return [
        _tally("axioms: triangle inequality", triangle, 1e-9),
        _tally("axioms: symmetry", symmetry, 1e-10),
        _tally("axioms: invariance under SO(2) conjugation and left shifts", conjugation, 1e-9),
    ]


def suite_oracle(ctx: SuiteContext) -> list[CheckResult]:
    n_targets = min(ctx.n, ORACLE_MAX_TARGETS)
    gaps = []
    for g in random_su2(ctx.rng, n_targets):
        try:
            gaps.append(abs(shoot_min_time(g, ctx.grid, ctx.workers).t_min - distance_su2(g).t))
        except NoMatchError as e:
            logger.warning(f"Oracle found no match for {g}: {e}")
            gaps.append(math.inf)

    # half-turns: both lifts give a minimizing geodesic
    shortfall = []
    for g in _random_sym_su2(ctx.rng, min(ctx.n, ORACLE_SYM_SAMPLES)):
        C = klein_omega(g)
        try:
            result = shoot_min_time_so3(C, ctx.grid, ctx.workers)
        except NoMatchError as e:
            logger.warning(f"Oracle found no match for a half-turn: {e}")
            shortfall.append(math.inf)
            continue
        gap = abs(result.t_min - distance_so3(C).t)
        shortfall.append(gap if len(result.minimizers) >= 2 else math.inf)

    return [
        _tally("oracle: shooting distance matches closed form", gaps, ctx.grid.time_tol),
        _tally("oracle: half-turns have at least two minimizers", shortfall, ctx.grid.time_tol),
    ]


SUITES: dict[str, Callable[[SuiteContext], list[CheckResult]]] = {
    'submetry': suite_submetry,
    'lemmas': suite_lemmas,
    'br-counterexample': suite_br_counterexample,
    'cutlocus': suite_cutlocus,
    'geodesics': suite_geodesics,
    'residuals': suite_residuals,
    'axioms': suite_axioms,
    'oracle': suite_oracle,
}


def run_suites(names: list[str], ctx: SuiteContext) -> list[CheckResult]:
    results = []
    for name in names:
        logger.info(f"Running suite '{name}' with n={ctx.n}")
        results.extend(SUITES[name](ctx))
    return results
