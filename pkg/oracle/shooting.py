"""
Brute-force geodesic shooting, an independent check of the closed-form distances.

The parameter box phi0 in [0, 2pi), beta in [-beta_max, beta_max],
t in (0, 2pi/sqrt(1+beta^2)] is scanned slice by slice along phi0. Grid
points whose endpoint deviation is a local minimum (phi0 periodic) below
capture_tol seed a coordinate descent with step halving, followed by a
Gauss-Newton polish. Refined points that reach the target within match_tol
are kept; the least kept t is the shooting distance.
"""
import math
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import numpy as np

from geometry.algebra import SU2Element, SO3Element, klein_omega_components
from geometry.geodesics import geodesic_batch
from distance.su2_distance import distance_su2
from distance.so3_distance import distance_so3
from utils.config import GridSpec
from utils.errors import NoMatchError

logger = logging.getLogger(__name__)

WIDEN_FRACTION = 0.9
WIDEN_FACTOR = 1.25
POLISH_ITER = 12
JACOBIAN_STEP = 1e-7
CHUNKS_PER_WORKER = 4


@dataclass(frozen=True)
class Minimizer:
    phi0: float
    beta: float
    t: float
    residual: float


@dataclass(frozen=True)
class ShootResult:
    t_min: float
    minimizers: list[Minimizer]
    grid: GridSpec
    seeds: int


class _Target:
    """Endpoint residual of geodesics against a fixed SU(2) or SO(3) element."""

    def __init__(self, target: SU2Element | SO3Element):
        if isinstance(target, SU2Element):
            self.group = 'su2'
            self.vector = target.as_array()
        else:
            self.group = 'so3'
            self.vector = np.asarray(target.m, dtype=float).ravel()

    def residual(self, phi0, beta, t) -> np.ndarray:
        components = geodesic_batch(phi0, beta, t)
        if self.group == 'su2':
            endpoint = np.stack(components, axis=-1)
        else:
            m = klein_omega_components(*components)
            endpoint = m.reshape(m.shape[:-2] + (9,))
        return endpoint - self.vector

    def deviation(self, phi0, beta, t) -> np.ndarray:
        return np.max(np.abs(self.residual(phi0, beta, t)), axis=-1)


def _time_bound(beta: np.ndarray) -> np.ndarray:
    return 2.0 * np.pi / np.sqrt(1.0 + beta * beta)


def _neighbourhood_min(x: np.ndarray) -> np.ndarray:
    """Minimum over the 3x3 (beta, t) neighbourhood, open edges."""
    padded = np.pad(x, 1, constant_values=np.inf)
    rows, cols = x.shape
    out = np.full(x.shape, np.inf)
    for dj in range(3):
        for dk in range(3):
            np.minimum(out, padded[dj:dj + rows, dk:dk + cols], out=out)
    return out


class ShootingOracle:
    def __init__(self, target: SU2Element | SO3Element, grid: GridSpec, workers: int = 1):
        self.target = _Target(target)
        self.grid = grid
        self.workers = max(1, int(workers))
        self.phis = 2.0 * np.pi * np.arange(grid.n_phi) / grid.n_phi
        self.betas = np.linspace(-grid.beta_max, grid.beta_max, grid.n_beta)
        fractions = np.arange(1, grid.n_t + 1) / grid.n_t
        self.times = _time_bound(self.betas)[:, None] * fractions[None, :]
        self.steps = np.array([
            2.0 * np.pi / grid.n_phi,
            2.0 * grid.beta_max / (grid.n_beta - 1),
            2.0 * np.pi / grid.n_t,
        ])

    def _slice(self, i: int) -> np.ndarray:
        phi = self.phis[i % self.grid.n_phi]
        return self.target.deviation(phi, self.betas[:, None], self.times)

    def _scan_chunk(self, bounds: tuple[int, int]) -> list[tuple]:
        """Local minima of the deviation for slices start..stop-1, rolling three slices."""
        start, stop = bounds
        previous, current = self._slice(start - 1), self._slice(start)
        neighbour_prev, neighbour_cur = _neighbourhood_min(previous), _neighbourhood_min(current)
        seeds = []
        for i in range(start, stop):
            upcoming = self._slice(i + 1)
            neighbour_next = _neighbourhood_min(upcoming)
            local = np.minimum(np.minimum(neighbour_prev, neighbour_cur), neighbour_next)
            mask = (current <= local) & (current <= self.grid.capture_tol)
            for j, k in zip(*np.nonzero(mask)):
                seeds.append((float(current[j, k]), float(self.times[j, k]),
                              float(self.phis[i]), float(self.betas[j])))
            neighbour_prev, neighbour_cur = neighbour_cur, neighbour_next
            current = upcoming
        return seeds

    def _scan(self) -> list[tuple]:
        n_phi = self.grid.n_phi
        n_chunks = min(n_phi, self.workers * CHUNKS_PER_WORKER) if self.workers > 1 else 1
        edges = np.linspace(0, n_phi, n_chunks + 1).astype(int)
        chunks = [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]

        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                parts = list(executor.map(self._scan_chunk, chunks))
        else:
            parts = [self._scan_chunk(c) for c in chunks]

        seeds = [s for part in parts for s in part]
        # deterministic regardless of scheduling: deviation first, then (t, phi0, beta)
        seeds.sort()
        if len(seeds) > self.grid.max_candidates:
            logger.warning(f"Keeping {self.grid.max_candidates} of {len(seeds)} seeds (max_candidates)")
        return seeds[:self.grid.max_candidates]

    def _project(self, x: np.ndarray) -> np.ndarray:
        x[:, 0] = np.mod(x[:, 0], 2.0 * np.pi)
        x[:, 2] = np.clip(x[:, 2], 0.0, _time_bound(x[:, 1]))
        return x

    def _residual(self, x: np.ndarray) -> np.ndarray:
        return self.target.residual(x[:, 0], x[:, 1], x[:, 2])

    def _cost(self, x: np.ndarray) -> np.ndarray:
        r = self._residual(x)
        return np.sum(r * r, axis=-1)

    def _refine(self, x: np.ndarray) -> np.ndarray:
        cost = self._cost(x)
        steps = np.tile(self.steps, (len(x), 1))
        for _ in range(self.grid.refine_steps):
            for c in range(3):
                improved = np.zeros(len(x), dtype=bool)
                for sign in (1.0, -1.0):
                    trial = x.copy()
                    trial[:, c] += sign * steps[:, c]
                    trial = self._project(trial)
                    trial_cost = self._cost(trial)
                    better = trial_cost < cost
                    x[better], cost[better] = trial[better], trial_cost[better]
                    improved |= better
                steps[~improved, c] *= 0.5

        for _ in range(POLISH_ITER):
            r = self._residual(x)
            jacobian = np.empty(r.shape + (3,))
            for c in range(3):
                shifted = x.copy()
                shifted[:, c] += JACOBIAN_STEP
                jacobian[:, :, c] = (self._residual(shifted) - r) / JACOBIAN_STEP
            delta = -(np.linalg.pinv(jacobian) @ r[:, :, None])[:, :, 0]
            trial = self._project(x + delta)
            trial_cost = self._cost(trial)
            better = trial_cost < cost
            if not np.any(better):
                break
            x[better], cost[better] = trial[better], trial_cost[better]
        return x

    def run(self) -> ShootResult:
        seeds = self._scan()
        logger.info(f"Shooting ({self.target.group}): {len(seeds)} seeds on a "
                    f"{self.grid.n_phi}x{self.grid.n_beta}x{self.grid.n_t} grid")
        if not seeds:
            raise NoMatchError(
                f"Error: no grid point came within capture_tol={self.grid.capture_tol} of the target; use a finer preset.")

        x = np.array([[phi, beta, t] for _, t, phi, beta in seeds])
        x = self._refine(x)
        deviation = np.max(np.abs(self._residual(x)), axis=-1)
        matched = deviation <= self.grid.match_tol
        if not np.any(matched):
            raise NoMatchError(
                f"Error: best refined deviation {float(np.min(deviation)):.3e} exceeds "
                f"match_tol={self.grid.match_tol}; use a finer preset.")

        points = sorted(
            (float(t), float(phi), float(beta), float(dev))
            for (phi, beta, t), dev in zip(x[matched], deviation[matched])
        )
        t_min = points[0][0]
        minimizers: list[Minimizer] = []
        for t, phi, beta, dev in points:
            if t > t_min + self.grid.time_tol:
                break
            if all(_parameter_distance(phi, beta, m) > self.grid.dedup_radius for m in minimizers):
                minimizers.append(Minimizer(phi, beta, t, dev))

        logger.info(f"Shooting ({self.target.group}): t_min={t_min:.6f}, "
                    f"{int(np.sum(matched))} matches, {len(minimizers)} distinct minimizers")
        return ShootResult(t_min, minimizers, self.grid, len(seeds))


def _parameter_distance(phi: float, beta: float, m: Minimizer) -> float:
    dphi = abs(phi - m.phi0) % (2.0 * math.pi)
    dphi = min(dphi, 2.0 * math.pi - dphi)
    return math.hypot(dphi, beta - m.beta)


def _widened(grid: GridSpec, beta: float | None) -> GridSpec:
    if beta is None or abs(beta) < WIDEN_FRACTION * grid.beta_max:
        return grid
    beta_max = WIDEN_FACTOR * abs(beta) / WIDEN_FRACTION
    logger.warning(f"Widening beta window from {grid.beta_max} to {beta_max:.3f}")
    return grid.model_copy(update={'beta_max': beta_max})


def shoot_min_time(target: SU2Element, grid: GridSpec, workers: int = 1) -> ShootResult:
    grid = _widened(grid, distance_su2(target).beta)
    return ShootingOracle(target, grid, workers).run()


def shoot_min_time_so3(target: SO3Element, grid: GridSpec, workers: int = 1) -> ShootResult:
    grid = _widened(grid, distance_so3(target).beta)
    return ShootingOracle(target, grid, workers).run()
