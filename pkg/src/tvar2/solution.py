"""General solution of the time-varying AR(2) recursion over a finite window.

The value at the anchor time t decomposes into a homogeneous part carrying
the two initial conditions (y_{t-k}, y_{t-k-1}) and a particular part
carrying the drifts and innovations from t-k+1 to t, all weighted by the
fundamental solutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .schedules import Schedule
from .xi import ORACLE_CAP, OracleCapError, fundamental_matrix, green_functions


@dataclass(frozen=True)
class GeneralSolution:
    """Weights expressing y_t from data k steps back.

    ``innovation_weights[i]`` multiplies the innovation at time t-i,
    i = 0..k-1 (these are the Green functions xi_{t,i}).
    """

    anchor: int
    lookback: int
    w0: float          # weight on y_{t-k}
    w1: float          # weight on y_{t-k-1}
    drift: float       # sum of xi_{t,i} * phi0(t-i)
    innovation_weights: np.ndarray


def general_solution(schedule: Schedule, t: int, k: int) -> GeneralSolution:
    """Decompose y_t into homogeneous and particular parts at lookback k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return GeneralSolution(int(t), 0, 1.0, 0.0, 0.0, np.empty(0))
    table = green_functions(schedule, t, k)
    weights = table.values[:k].copy()
    drift = float(sum(weights[i] * schedule.at(t - i).phi0 for i in range(k)))
    w0 = table.xi(k)
    w1 = schedule.at(t - k + 1).phi2 * table.xi(k - 1)
    return GeneralSolution(int(t), int(k), w0, w1, drift, weights)


def evaluate_solution(sol: GeneralSolution, y_init: tuple[float, float],
                      innovations: Sequence[float]) -> float:
    """Evaluate the solution for initial values (y_{t-k}, y_{t-k-1}) and
    the k innovations ordered oldest (t-k+1) to newest (t)."""
    k = sol.lookback
    if len(innovations) != k:
        raise ValueError(f"expected {k} innovations, got {len(innovations)}")
    y0, y1 = y_init
    value = sol.w0 * y0 + sol.w1 * y1 + sol.drift
    for i in range(k):
        value += sol.innovation_weights[i] * innovations[k - 1 - i]
    return float(value)


def forward_recursion(schedule: Schedule, t: int, k: int,
                      y_init: tuple[float, float],
                      innovations: Sequence[float]) -> float:
    """Brute-force oracle: iterate the defining recursion k steps forward."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if len(innovations) != k:
        raise ValueError(f"expected {k} innovations, got {len(innovations)}")
    y_prev, y_prev2 = y_init
    for step, tau in enumerate(range(t - k + 1, t + 1)):
        tup = schedule.at(tau)
        y = tup.phi0 + tup.phi1 * y_prev + tup.phi2 * y_prev2 + innovations[step]
        y_prev2, y_prev = y_prev, y
    return float(y_prev)


def particular_solution_determinant_oracle(schedule: Schedule, t: int, k: int,
                                           innovations: Sequence[float],
                                           cap: int = ORACLE_CAP) -> float:
    """Test oracle for the particular part: determinant of the core matrix
    augmented on the left by the forcing column phi0 + innovation.

    Equals the particular part of ``evaluate_solution`` (zero initial values).
    Innovations are ordered oldest to newest, as everywhere else.
    """
    if k < 1:
        raise ValueError("oracle requires k >= 1")
    if k > cap:
        raise OracleCapError(f"oracle cap {cap} exceeded (k={k})")
    if len(innovations) != k:
        raise ValueError(f"expected {k} innovations, got {len(innovations)}")
    mat = fundamental_matrix(schedule, t, k)
    for i in range(1, k + 1):
        mat[i - 1, 0] = schedule.at(t - k + i).phi0 + innovations[i - 1]
    return float(np.linalg.det(mat))
