"""Multi-step forecasts, forecast-error variance and unconditional moments.

The k-step predictor and its mean square error are finite sums over the
Green functions; unconditional mean, variance and autocovariances are the
corresponding infinite series, truncated with an explicit tail test and an
honest convergence flag (non-convergence is data, not an error: explosive
schedules are legitimate forecasting inputs).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .schedules import Schedule
from .xi import green_functions, xi_stream

DEFAULT_TOL = 1e-12
DEFAULT_N_MAX = 10_000


@dataclass(frozen=True)
class ForecastResult:
    anchor: int
    horizon: int
    point: float
    error_weights: np.ndarray   # xi_{t,i}, i = 0..k-1
    mse: float


@dataclass(frozen=True)
class MomentSummary:
    anchor: int
    depth: int
    mean: float
    variance: float
    tail_bound: float
    converged: bool

    @property
    def second_moment(self) -> float:
        return self.mean ** 2 + self.variance


@dataclass(frozen=True)
class Autocovariance:
    anchor: int
    lag: int
    value: float
    converged: bool


def forecast(schedule: Schedule, t: int, k: int,
             y_init: tuple[float, float]) -> ForecastResult:
    """Optimal (least-squares) linear k-step predictor of y_t from
    (y_{t-k}, y_{t-k-1}), with its error weights and mean square error."""
    if k < 1:
        raise ValueError("k must be >= 1")
    table = green_functions(schedule, t, k)
    weights = table.values[:k].copy()
    point = table.xi(k) * y_init[0] + schedule.at(t - k + 1).phi2 * table.xi(k - 1) * y_init[1]
    mse = 0.0
    for i in range(k):
        tup = schedule.at(t - i)
        point += weights[i] * tup.phi0
        mse += weights[i] ** 2 * tup.sigma2
    return ForecastResult(int(t), int(k), float(point), weights, float(mse))


def forecast_error_weights(schedule: Schedule, t: int, k: int) -> np.ndarray:
    """Moving-average weights [xi_{t,0}, ..., xi_{t,k-1}] of the k-step
    forecast error."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return green_functions(schedule, t, k - 1).values.copy()


def _tail_window(tol: float) -> int:
    return max(10, math.ceil(math.log(1.0 / tol)))


def _truncated_sum(terms: Iterator[float], tol: float, n_max: int
                   ) -> tuple[float, int, float, bool]:
    """Sum terms until the last window of them is negligible relative to the
    partial sum, or n_max is hit.

    Returns (value, n_used, tail_bound, converged); tail_bound is the sum of
    absolute values over the final window, an empirical residual indicator.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    window = _tail_window(tol)
    recent: deque[float] = deque(maxlen=window)
    total = 0.0
    n = 0
    for term in terms:
        if not math.isfinite(term):
            recent.append(math.inf)
            return total, n, math.inf, False
        total += term
        recent.append(abs(term))
        n += 1
        if n >= window and max(recent) < tol * max(1.0, abs(total)):
            return total, n, float(sum(recent)), True
        if n >= n_max:
            break
    return total, n, float(sum(recent)), False


def unconditional_mean(schedule: Schedule, t: int, tol: float = DEFAULT_TOL,
                       n_max: int = DEFAULT_N_MAX) -> MomentSummary:
    """Truncated series for E(y_t): sum of xi_{t,i} * phi0(t-i)."""
    def terms():
        for i, x in enumerate(xi_stream(schedule, t)):
            yield x * schedule.at(t - i).phi0
    value, n, tail, converged = _truncated_sum(terms(), tol, n_max)
    return MomentSummary(int(t), n, value, math.nan, tail, converged)


def unconditional_variance(schedule: Schedule, t: int, tol: float = DEFAULT_TOL,
                           n_max: int = DEFAULT_N_MAX) -> MomentSummary:
    """Truncated series for Var(y_t): sum of xi_{t,i}^2 * sigma2(t-i).

    The summary also carries the mean, so ``second_moment`` is available.
    """
    def terms():
        for i, x in enumerate(xi_stream(schedule, t)):
            yield x * x * schedule.at(t - i).sigma2
    variance, n, tail, converged = _truncated_sum(terms(), tol, n_max)
    mean = unconditional_mean(schedule, t, tol, n_max)
    return MomentSummary(int(t), max(n, mean.depth), mean.mean, variance,
                         max(tail, mean.tail_bound),
                         converged and mean.converged)


def autocovariance(schedule: Schedule, t: int, k: int, tol: float = DEFAULT_TOL,
                   n_max: int = DEFAULT_N_MAX) -> Autocovariance:
    """Cov(y_t, y_{t-k}) via the series sum of
    xi_{t,k+i} * xi_{t-k,i} * sigma2(t-k-i)."""
    if k < 0:
        raise ValueError("k must be >= 0")

    def terms():
        anchor_stream = xi_stream(schedule, t)
        for _ in range(k):
            next(anchor_stream)
        lagged_stream = xi_stream(schedule, t - k)
        for i, (xa, xl) in enumerate(zip(anchor_stream, lagged_stream)):
            yield xa * xl * schedule.at(t - k - i).sigma2

    value, _, _, converged = _truncated_sum(terms(), tol, n_max)
    return Autocovariance(int(t), int(k), value, converged)


def autocovariance_recursion(schedule: Schedule, t: int, k: int,
                             tol: float = DEFAULT_TOL,
                             n_max: int = DEFAULT_N_MAX) -> Autocovariance:
    """Cov(y_t, y_{t-k}) via the recursion form
    xi_{t,k} * Var(y_{t-k}) + phi2(t-k+1) * xi_{t,k-1} * Cov(y_{t-k}, y_{t-k-1}),
    with both right-hand moments grounded in the series forms."""
    if k < 1:
        raise ValueError("recursion form requires k >= 1")
    table = green_functions(schedule, t, k)
    var = unconditional_variance(schedule, t - k, tol, n_max)
    cov1 = autocovariance(schedule, t - k, 1, tol, n_max)
    value = (table.xi(k) * var.variance
             + schedule.at(t - k + 1).phi2 * table.xi(k - 1) * cov1.value)
    return Autocovariance(int(t), int(k), float(value),
                          var.converged and cov1.converged)


@dataclass(frozen=True)
class TailDiagnostic:
    """Empirical (not rigorous) check of the summability assumption behind
    the infinite moving-average representation."""

    max_weighted_square_sum: float
    square_sums_bounded: bool
    max_drift_increment: float
    drift_increments_small: bool

    @property
    def passed(self) -> bool:
        return self.square_sums_bounded and self.drift_increments_small


def assumption_a1_diagnostic(schedule: Schedule, t_window: Iterable[int],
                             n: int, bound: float,
                             tol: float = DEFAULT_TOL) -> TailDiagnostic:
    """Over anchors in t_window, accumulate the first n+1 terms of the
    squared-weight variance series and the drift series; report whether the
    former stays under ``bound`` and the latter's tail increments under the
    relative tolerance."""
    if n < 1:
        raise ValueError("n must be >= 1")
    window = _tail_window(tol)
    max_sq = 0.0
    max_inc = 0.0
    for t in t_window:
        sq_sum = 0.0
        drift_sum = 0.0
        recent: deque[float] = deque(maxlen=window)
        for i, x in enumerate(xi_stream(schedule, t)):
            if i > n:
                break
            tup = schedule.at(t - i)
            sq_sum += x * x * tup.sigma2
            drift_sum += x * tup.phi0
            recent.append(abs(x * tup.phi0))
        max_sq = max(max_sq, sq_sum)
        scale = max(1.0, abs(drift_sum))
        max_inc = max(max_inc, max(recent) / scale if recent else 0.0)
    return TailDiagnostic(max_sq, bool(max_sq < bound),
                          max_inc, bool(max_inc < tol))
