"""Deterministic coefficient schedules for second-order autoregressions.

A schedule maps an integer time index t to the drift, the two lag
coefficients and the innovation variance governing the process at that
time.  Concrete variants cover the constant AR(2) case, seasonally
periodic coefficients, cyclical (grouped-season) coefficients and
piecewise-constant regimes separated by abrupt breaks.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

DEFAULT_SIGMA2_BOUNDS = (1e-12, 1e12)


class ScheduleError(ValueError):
    """Invalid schedule parameters or an out-of-window query."""


@dataclass(frozen=True)
class CoefficientTuple:
    """Drift, lag-1 and lag-2 coefficients and innovation variance at one time."""

    phi0: float
    phi1: float
    phi2: float
    sigma2: float


def _as_tuple(value) -> CoefficientTuple:
    if isinstance(value, CoefficientTuple):
        return value
    if isinstance(value, dict):
        return CoefficientTuple(**{k: float(v) for k, v in value.items()})
    phi0, phi1, phi2, sigma2 = value
    return CoefficientTuple(float(phi0), float(phi1), float(phi2), float(sigma2))


def _check_sigma2(sigma2: float, where: str = "") -> None:
    if not sigma2 > 0.0:
        suffix = f" ({where})" if where else ""
        raise ScheduleError(f"sigma2 must be > 0{suffix}")


class Schedule:
    """Base class: a pure map from integer time to a CoefficientTuple.

    Schedules are immutable after construction and safe to evaluate
    concurrently.  ``sigma2_bounds`` are the user-declared lower/upper
    variance bounds, enforced on every evaluation.
    """

    kind = "generic"

    def __init__(self, sigma2_bounds: tuple[float, float] = DEFAULT_SIGMA2_BOUNDS):
        lo, hi = float(sigma2_bounds[0]), float(sigma2_bounds[1])
        if not 0.0 <= lo < hi:
            raise ScheduleError("sigma2 bounds must satisfy 0 <= lower < upper")
        self.sigma2_bounds = (lo, hi)

    def _tuple_at(self, t: int) -> CoefficientTuple:
        raise NotImplementedError

    def at(self, t: int) -> CoefficientTuple:
        """Coefficients governing time t; deterministic in t."""
        tup = self._tuple_at(int(t))
        _check_sigma2(tup.sigma2, f"t={t}")
        lo, hi = self.sigma2_bounds
        if not lo < tup.sigma2 < hi:
            raise ScheduleError(
                f"sigma2={tup.sigma2} at t={t} outside declared bounds ({lo}, {hi})"
            )
        return tup


class GenericSchedule(Schedule):
    """Schedule backed by an arbitrary pure function of t."""

    kind = "generic"

    def __init__(self, fn: Callable[[int], CoefficientTuple],
                 sigma2_bounds=DEFAULT_SIGMA2_BOUNDS):
        super().__init__(sigma2_bounds)
        self._fn = fn

    def _tuple_at(self, t: int) -> CoefficientTuple:
        return _as_tuple(self._fn(t))


class ConstantSchedule(Schedule):
    """Classical constant-coefficient AR(2)."""

    kind = "constant"

    def __init__(self, phi0=0.0, phi1=0.0, phi2=0.0, sigma2=1.0,
                 sigma2_bounds=DEFAULT_SIGMA2_BOUNDS):
        super().__init__(sigma2_bounds)
        _check_sigma2(float(sigma2))
        self.coefficients = CoefficientTuple(float(phi0), float(phi1),
                                             float(phi2), float(sigma2))

    def _tuple_at(self, t: int) -> CoefficientTuple:
        return self.coefficients


def season_of(t: int, period: int) -> int:
    """Season s in 1..period with t = T*period + s."""
    return (int(t) - 1) % period + 1


class PeriodicSchedule(Schedule):
    """Seasonally varying AR(2): one coefficient tuple per season, period l."""

    kind = "periodic"

    def __init__(self, seasons: Sequence, sigma2_bounds=DEFAULT_SIGMA2_BOUNDS):
        super().__init__(sigma2_bounds)
        if len(seasons) < 1:
            raise ScheduleError("need at least one season")
        self.seasons = tuple(_as_tuple(s) for s in seasons)
        for s, tup in enumerate(self.seasons, start=1):
            _check_sigma2(tup.sigma2, f"season {s}")
        self.period = len(self.seasons)

    def _tuple_at(self, t: int) -> CoefficientTuple:
        return self.seasons[season_of(t, self.period) - 1]


class CyclicalSchedule(Schedule):
    """Cyclical AR(2): seasons grouped into d+1 cycles sharing coefficients.

    Cycle j (j = 1..d+1) covers seasons boundaries[j-2]+1 .. boundaries[j-1],
    with implicit boundaries 0 and ``period``.
    """

    kind = "cyclical"

    def __init__(self, period: int, boundaries: Sequence[int], cycles: Sequence,
                 sigma2_bounds=DEFAULT_SIGMA2_BOUNDS):
        super().__init__(sigma2_bounds)
        period = int(period)
        if period < 1:
            raise ScheduleError("period must be >= 1")
        bounds = [int(b) for b in boundaries]
        if any(b2 <= b1 for b1, b2 in zip([0] + bounds, bounds + [period])):
            raise ScheduleError(
                "cycle boundaries must be strictly increasing inside (0, period)")
        if not 0 <= len(bounds) <= period - 1:
            raise ScheduleError("need 0 <= d <= period - 1 cycle boundaries")
        if len(cycles) != len(bounds) + 1:
            raise ScheduleError(
                f"expected {len(bounds) + 1} cycle tuples, got {len(cycles)}")
        self.period = period
        self.boundaries = tuple(bounds)
        self.cycles = tuple(_as_tuple(c) for c in cycles)
        for j, tup in enumerate(self.cycles, start=1):
            _check_sigma2(tup.sigma2, f"cycle {j}")

    def cycle_of_season(self, s: int) -> int:
        """1-based cycle index containing season s."""
        return bisect_right(self.boundaries, s - 1) + 1

    def _tuple_at(self, t: int) -> CoefficientTuple:
        return self.cycles[self.cycle_of_season(season_of(t, self.period)) - 1]


class BreakSchedule(Schedule):
    """Piecewise-constant AR(2) with r abrupt breaks behind an anchor time.

    Regime j = 1..r+1 governs times anchor-offsets[j-1] .. anchor-offsets[j]+1
    (with implicit offsets 0 and ``horizon``); queries are valid on
    anchor-horizon .. anchor only.
    """

    kind = "abrupt-breaks"

    def __init__(self, anchor: int, horizon: int, offsets: Sequence[int],
                 regimes: Sequence, sigma2_bounds=DEFAULT_SIGMA2_BOUNDS):
        super().__init__(sigma2_bounds)
        self.anchor = int(anchor)
        self.horizon = int(horizon)
        if self.horizon < 1:
            raise ScheduleError("horizon must be >= 1")
        offs = [int(o) for o in offsets]
        if any(o2 <= o1 for o1, o2 in zip([0] + offs, offs + [self.horizon])):
            raise ScheduleError(
                "break offsets must be strictly increasing inside (0, horizon)")
        if len(regimes) != len(offs) + 1:
            raise ScheduleError(
                f"expected {len(offs) + 1} regime tuples, got {len(regimes)}")
        self.offsets = tuple(offs)
        self.regimes = tuple(_as_tuple(r) for r in regimes)
        for j, tup in enumerate(self.regimes, start=1):
            _check_sigma2(tup.sigma2, f"regime {j}")

    def regime_of(self, t: int) -> int:
        """1-based regime index governing time t (must be in window)."""
        offset = self.anchor - int(t)
        if not 0 <= offset <= self.horizon:
            raise ScheduleError(
                f"t={t} outside break-schedule window "
                f"[{self.anchor - self.horizon}, {self.anchor}]")
        # regime j covers offsets offsets[j-1] .. offsets[j]-1; the oldest
        # regime also answers for the window edge offset == horizon
        return min(bisect_right(self.offsets, offset), len(self.regimes) - 1) + 1

    def _tuple_at(self, t: int) -> CoefficientTuple:
        return self.regimes[self.regime_of(t) - 1]

    def re_anchored(self, anchor: int) -> "BreakSchedule":
        """Copy with the same relative structure at a new anchor time."""
        return BreakSchedule(anchor, self.horizon, self.offsets, self.regimes,
                             self.sigma2_bounds)


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.findings


def validate(schedule: Schedule, t_start: int, t_stop: int) -> ValidationReport:
    """Evaluate the schedule over [t_start, t_stop] and report violations.

    Checks sigma2 positivity/bounds at each point, determinism of repeated
    evaluation, and period-l shift invariance for periodic/cyclical kinds.
    Findings are reported, never raised.
    """
    if t_stop < t_start:
        raise ScheduleError("validation window is empty")
    findings: list[str] = []

    def note(msg: str) -> None:
        if msg not in findings:
            findings.append(msg)

    for t in range(int(t_start), int(t_stop) + 1):
        try:
            tup = schedule.at(t)
        except ScheduleError as exc:
            note(str(exc))
            continue
        if schedule.at(t) != tup:
            note(f"evaluation at t={t} is not deterministic")
        period = getattr(schedule, "period", None)
        if period is not None:
            try:
                shifted = schedule.at(t + period)
            except ScheduleError as exc:
                note(str(exc))
                continue
            if shifted != tup:
                note(f"period-{period} shift invariance violated at t={t}")
    return ValidationReport(tuple(findings))


def validate_params(builder: Callable[[], Schedule],
                    window: tuple[int, int] | None = None) -> ValidationReport:
    """Construct a schedule via ``builder`` and validate it, reporting
    construction errors as findings instead of raising."""
    try:
        schedule = builder()
    except ScheduleError as exc:
        return ValidationReport((str(exc),))
    if window is None:
        if isinstance(schedule, BreakSchedule):
            window = (schedule.anchor - schedule.horizon, schedule.anchor)
        else:
            period = getattr(schedule, "period", 1)
            window = (1, max(40, 2 * period))
    return validate(schedule, *window)
