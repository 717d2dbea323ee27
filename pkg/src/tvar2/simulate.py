"""Monte Carlo path generation for time-varying AR(2) schedules.

Every path owns a counter-based random stream keyed by (master seed, path
index), so ensembles are bit-identical regardless of how paths are chunked
across worker threads.  Statistics are collected at fixed anchor times,
never time-averaged: the moments are themselves functions of time.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .schedules import Schedule
from .solution import general_solution

DEFAULT_BURN_IN = 500
CHUNK_TARGET = 20_000


@dataclass(frozen=True)
class SimulationConfig:
    """Everything that determines an ensemble.

    Paths iterate the recursion from zero initial conditions, discard
    ``burn_in`` values and keep the final ``length`` values ending at
    ``t_end``.  ``innovations`` is "normal" or "uniform" (scaled to unit
    variance either way, then by sigma_t).
    """

    schedule: Schedule
    n_paths: int
    t_end: int
    length: int
    seed: int
    burn_in: int = DEFAULT_BURN_IN
    innovations: str = "normal"
    workers: int = 1

    def __post_init__(self):
        if self.n_paths < 1:
            raise ValueError("n_paths must be >= 1")
        if self.length < 1:
            raise ValueError("length must be >= 1")
        if self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if self.innovations not in ("normal", "uniform"):
            raise ValueError(f"unknown innovation family {self.innovations!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class PathEnsemble:
    """Simulated values: ``values[p, j]`` is path p at time ``times[j]``."""

    times: np.ndarray
    values: np.ndarray

    def at(self, t: int) -> np.ndarray:
        """Cross-section of all paths at time t."""
        idx = int(t) - int(self.times[0])
        if not 0 <= idx < len(self.times):
            raise ValueError(f"t={t} not in simulated range "
                             f"[{self.times[0]}, {self.times[-1]}]")
        return self.values[:, idx]


@dataclass(frozen=True)
class EstimateWithSE:
    value: float
    se: float


@dataclass(frozen=True)
class EmpiricalMoments:
    anchor: int
    mean: EstimateWithSE
    variance: EstimateWithSE
    autocovariances: tuple[EstimateWithSE, ...] = field(default=())


def _innovation_block(rng: np.random.Generator, family: str, n: int) -> np.ndarray:
    if family == "uniform":
        root3 = math.sqrt(3.0)
        return rng.uniform(-root3, root3, n)
    return rng.standard_normal(n)


def _simulate_chunk(config: SimulationConfig, first_path: int, n_paths: int,
                    sigma: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    total = config.burn_in + config.length
    eps = np.empty((n_paths, total))
    for p in range(n_paths):
        rng = np.random.Generator(
            np.random.Philox(key=[config.seed, first_path + p]))
        eps[p] = _innovation_block(rng, config.innovations, total)
    eps *= sigma
    y_prev = np.zeros(n_paths)
    y_prev2 = np.zeros(n_paths)
    out = np.empty((n_paths, config.length))
    for j in range(total):
        phi0, phi1, phi2 = coeffs[j]
        y = phi0 + phi1 * y_prev + phi2 * y_prev2 + eps[:, j]
        y_prev2, y_prev = y_prev, y
        if j >= config.burn_in:
            out[:, j - config.burn_in] = y
    return out


def simulate_paths(config: SimulationConfig) -> PathEnsemble:
    """Generate the ensemble; bit-identical for a given config and seed,
    independent of ``workers``."""
    total = config.burn_in + config.length
    t_first = config.t_end - total + 1
    tuples = [config.schedule.at(t) for t in range(t_first, config.t_end + 1)]
    sigma = np.sqrt(np.array([tup.sigma2 for tup in tuples]))
    coeffs = np.array([(tup.phi0, tup.phi1, tup.phi2) for tup in tuples])

    starts = list(range(0, config.n_paths, CHUNK_TARGET))
    sizes = [min(CHUNK_TARGET, config.n_paths - s) for s in starts]
    if config.workers == 1 or len(starts) == 1:
        chunks = [_simulate_chunk(config, s, n, sigma, coeffs)
                  for s, n in zip(starts, sizes)]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            chunks = list(pool.map(
                lambda sn: _simulate_chunk(config, sn[0], sn[1], sigma, coeffs),
                zip(starts, sizes)))
    times = np.arange(config.t_end - config.length + 1, config.t_end + 1)
    return PathEnsemble(times, np.vstack(chunks))


def _mean_se(sample: np.ndarray) -> EstimateWithSE:
    n = len(sample)
    se = float(sample.std(ddof=1) / math.sqrt(n)) if n >= 2 else math.inf
    return EstimateWithSE(float(sample.mean()), se)


def _variance_se(sample: np.ndarray) -> EstimateWithSE:
    """Sample variance with its large-sample standard error
    sqrt((m4 - s^4) / n), m4 the central fourth moment."""
    n = len(sample)
    if n < 2:
        return EstimateWithSE(0.0, math.inf)
    centered = sample - sample.mean()
    s2 = float(centered.dot(centered) / (n - 1))
    m4 = float(np.mean(centered ** 4))
    se = math.sqrt(max(m4 - s2 * s2, 0.0) / n)
    return EstimateWithSE(s2, se)


def empirical_moments(ensemble: PathEnsemble, t: int,
                      max_lag: int = 0) -> EmpiricalMoments:
    """Cross-path sample mean, variance and autocovariances at anchor t."""
    if max_lag < 0:
        raise ValueError("max_lag must be >= 0")
    anchor = ensemble.at(t)
    anchor_centered = anchor - anchor.mean()
    autocovs = []
    for k in range(1, max_lag + 1):
        lagged = ensemble.at(t - k)
        products = anchor_centered * (lagged - lagged.mean())
        autocovs.append(_mean_se(products))
    return EmpiricalMoments(int(t), _mean_se(anchor), _variance_se(anchor),
                            tuple(autocovs))


def empirical_forecast_error(config: SimulationConfig, t: int, k: int
                             ) -> tuple[EstimateWithSE, EstimateWithSE]:
    """Per-path k-step forecast errors at anchor t.

    Each path's realized y_t is compared with the analytic predictor built
    from that path's own (y_{t-k}, y_{t-k-1}).  Returns (error mean, error
    variance), each with a standard error; the variance estimates the
    forecast mean square error.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if config.n_paths < 100:
        raise ValueError("need at least 100 paths")
    needed = k + 2
    if config.t_end - config.length + 1 > t - k - 1 or t > config.t_end:
        raise ValueError(
            f"ensemble window must cover t-k-1..t; need length >= {needed}")
    ensemble = simulate_paths(config)
    sol = general_solution(config.schedule, t, k)
    predicted = (sol.drift + sol.w0 * ensemble.at(t - k)
                 + sol.w1 * ensemble.at(t - k - 1))
    errors = ensemble.at(t) - predicted
    return _mean_se(errors), _variance_se(errors)
