"""Fundamental solutions of the time-varying second-order recursion.

xi(schedule, t, k) is the determinant of the k x k tridiagonal matrix
holding the lag coefficients from time t-k+1 up to t.  These determinants
are the Green functions (moving-average weights) of the process anchored
at time t.  The production path is the three-term recurrence; a direct
determinant of the assembled matrix is kept as a test-only oracle.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .schedules import Schedule

ORACLE_CAP = 64

REPEATED_ROOT_TOL = 1e-9


class OracleCapError(ValueError):
    """Determinant oracle asked for a size beyond its testing cap."""


@dataclass(frozen=True)
class XiTable:
    """Triangular slice of fundamental solutions for one anchor time.

    ``values[i]`` holds xi_{t,i} for i = 0..depth; index -1 is defined as 0.
    """

    anchor: int
    values: np.ndarray

    @property
    def depth(self) -> int:
        return len(self.values) - 1

    def xi(self, i: int) -> float:
        if i == -1:
            return 0.0
        if not 0 <= i <= self.depth:
            raise IndexError(f"depth {i} not in table (-1..{self.depth})")
        return float(self.values[i])


def xi_stream(schedule: Schedule, t: int) -> Iterator[float]:
    """Yield xi_{t,0}, xi_{t,1}, ... lazily for a fixed anchor t.

    Uses the first-row expansion of the determinant:
    xi_{t,i} = phi1(t-i+1) * xi_{t,i-1} + phi2(t-i+2) * xi_{t,i-2}.
    """
    yield 1.0
    prev2 = 1.0
    prev = schedule.at(t).phi1
    yield prev
    i = 2
    while True:
        cur = schedule.at(t - i + 1).phi1 * prev + schedule.at(t - i + 2).phi2 * prev2
        yield cur
        prev2, prev = prev, cur
        i += 1


def green_functions(schedule: Schedule, t: int, k_max: int) -> XiTable:
    """Table of xi_{t,0..k_max}: the Green functions anchored at time t."""
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    values = np.empty(k_max + 1)
    stream = xi_stream(schedule, t)
    for i in range(k_max + 1):
        values[i] = next(stream)
    return XiTable(int(t), values)


def xi(schedule: Schedule, t: int, k: int) -> float:
    """Fundamental solution xi_{t,k}; xi_{t,0} = 1, xi_{t,-1} = 0."""
    if k < -1:
        raise ValueError("k must be >= -1")
    if k == -1:
        return 0.0
    return green_functions(schedule, t, k).xi(k)


def xi_second(schedule: Schedule, t: int, k: int) -> float:
    """Second fundamental solution: phi2(t-k+1) * xi_{t,k-1}, for k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return schedule.at(t - k + 1).phi2 * xi(schedule, t, k - 1)


def fundamental_matrix(schedule: Schedule, t: int, k: int) -> np.ndarray:
    """Dense k x k tridiagonal matrix whose determinant is xi_{t,k}.

    Row i (1-based) carries time t-k+i: diagonal phi1, subdiagonal phi2,
    superdiagonal -1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    mat = np.zeros((k, k))
    for i in range(1, k + 1):
        tup = schedule.at(t - k + i)
        mat[i - 1, i - 1] = tup.phi1
        if i >= 2:
            mat[i - 1, i - 2] = tup.phi2
        if i < k:
            mat[i - 1, i] = -1.0
    return mat


def second_fundamental_matrix(schedule: Schedule, t: int, k: int) -> np.ndarray:
    """Matrix for the second fundamental solution: first column is
    (phi2(t-k+1), 0, ...), the rest as in ``fundamental_matrix``."""
    mat = fundamental_matrix(schedule, t, k)
    mat[0, 0] = schedule.at(t - k + 1).phi2
    if k >= 2:
        mat[1, 0] = 0.0
    return mat


def _capped(k: int, cap: int) -> None:
    if k > cap:
        raise OracleCapError(f"oracle cap {cap} exceeded (k={k})")


def xi_determinant_oracle(schedule: Schedule, t: int, k: int,
                          cap: int = ORACLE_CAP) -> float:
    """Test oracle: xi_{t,k} via direct LU determinant of the assembled matrix."""
    if k < 1:
        raise ValueError("oracle requires k >= 1")
    _capped(k, cap)
    return float(np.linalg.det(fundamental_matrix(schedule, t, k)))


def xi_second_determinant_oracle(schedule: Schedule, t: int, k: int,
                                 cap: int = ORACLE_CAP) -> float:
    """Test oracle for the second fundamental solution."""
    if k < 1:
        raise ValueError("oracle requires k >= 1")
    _capped(k, cap)
    return float(np.linalg.det(second_fundamental_matrix(schedule, t, k)))


def constant_xi(phi1: float, phi2: float, k: int) -> float:
    """Closed-form xi for constant coefficients via the lag-polynomial roots.

    With 1 - phi1*z - phi2*z^2 = (1 - lam1*z)(1 - lam2*z) and distinct roots,
    xi_k = (lam1^(k+1) - lam2^(k+1)) / (lam1 - lam2); the repeated-root limit
    is (k+1) * lam^k.
    """
    if k < -1:
        raise ValueError("k must be >= -1")
    if k == -1:
        return 0.0
    if k == 0:
        return 1.0
    disc = cmath.sqrt(phi1 * phi1 + 4.0 * phi2)
    lam1 = (phi1 + disc) / 2.0
    lam2 = (phi1 - disc) / 2.0
    if abs(lam1 - lam2) < REPEATED_ROOT_TOL * max(1.0, abs(lam1)):
        lam = (lam1 + lam2) / 2.0
        value = (k + 1) * lam ** k
    else:
        value = (lam1 ** (k + 1) - lam2 ** (k + 1)) / (lam1 - lam2)
    if abs(value.imag) > 1e-10 * max(1.0, abs(value.real)):
        raise ArithmeticError(f"non-real xi from root formula: {value}")
    return value.real
