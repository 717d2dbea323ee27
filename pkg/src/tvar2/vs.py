"""Vector-of-seasons VAR(1) form of a periodic AR(2) and stationarity checks.

Stacking one period of observations turns the periodic model into a
constant-coefficient first-order vector autoregression; the process is
stationary when the spectral radius of the implied companion pencil is
below one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .schedules import PeriodicSchedule, ScheduleError

BOUNDARY_BAND = 1e-8


@dataclass(frozen=True)
class VSMatrices:
    """The l x l stacked-form parameter matrices.

    ``phi0_mat`` is unit lower triangular (within-period lags),
    ``phi1_mat`` carries the lags reaching into the previous period.
    """

    period: int
    phi0_mat: np.ndarray
    phi1_mat: np.ndarray


@dataclass(frozen=True)
class StationarityVerdict:
    spectral_radius: float
    margin: float                 # 1 - spectral radius
    stationary: bool | None       # None: indeterminate within tolerance

    @property
    def indeterminate(self) -> bool:
        return self.stationary is None


def build_vs(schedule: PeriodicSchedule) -> VSMatrices:
    """Stack the periodic schedule into its vector-of-seasons matrices."""
    l = schedule.period
    if l < 2:
        raise ScheduleError("vector-of-seasons form needs at least 2 seasons")
    phi = {(1, s): schedule.seasons[s - 1].phi1 for s in range(1, l + 1)}
    phi.update({(2, s): schedule.seasons[s - 1].phi2 for s in range(1, l + 1)})
    m0 = np.eye(l)
    m1 = np.zeros((l, l))
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            lag = i - j
            if j < i and lag in (1, 2):
                m0[i - 1, j - 1] = -phi[(lag, i)]
            lag_prev = i + l - j
            if lag_prev in (1, 2):
                m1[i - 1, j - 1] = phi[(lag_prev, i)]
    return VSMatrices(l, m0, m1)


def stationarity_check(vs: VSMatrices) -> StationarityVerdict:
    """Spectral radius of the companion pencil; stationary iff below one.

    Within ``BOUNDARY_BAND`` of one the verdict is reported as
    indeterminate rather than forced either way.
    """
    companion = np.linalg.solve(vs.phi0_mat, vs.phi1_mat)
    rho = float(max(abs(np.linalg.eigvals(companion)), default=0.0))
    margin = 1.0 - rho
    if abs(margin) < BOUNDARY_BAND:
        return StationarityVerdict(rho, margin, None)
    return StationarityVerdict(rho, margin, rho < 1.0)


def par24_restriction(schedule: PeriodicSchedule) -> tuple[float, bool]:
    """The eight-term nonlinear restriction for a four-season order-2 model.

    Returns (absolute value of the expression, satisfied flag: value < 1).
    With all lag-2 coefficients zero it reduces to the absolute product of
    the four seasonal lag-1 coefficients.
    """
    if schedule.period != 4:
        raise ScheduleError("restriction is defined for 4 seasons")
    p1 = [s.phi1 for s in schedule.seasons]
    p2 = [s.phi2 for s in schedule.seasons]
    value = abs(
        p2[1] * p1[2] * p1[3]
        + p2[1] * p2[3]
        + p2[0] * p1[1] * p1[2]
        + p2[0] * p2[2]
        + p1[0] * p1[1] * p1[2] * p1[3]
        + p1[0] * p1[1] * p2[3]
        + p1[0] * p1[3] * p2[2]
        - p2[0] * p2[1] * p2[2] * p2[3]
    )
    return value, value < 1.0
