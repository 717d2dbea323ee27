import numpy as np
import pytest

from tvar2 import (ConstantSchedule, constant_xi, green_functions, xi,
                   xi_determinant_oracle, xi_second,
                   xi_second_determinant_oracle, xi_stream)
from tvar2.xi import OracleCapError, fundamental_matrix
from conftest import random_schedule


def test_base_cases():
    s = ConstantSchedule(0.0, 0.7, -0.1, 1.0)
    assert xi(s, 5, -1) == 0.0
    assert xi(s, 5, 0) == 1.0
    assert xi(s, 5, 1) == 0.7


def test_known_table_for_constant_coefficients():
    s = ConstantSchedule(0.0, 1.2, -0.32, 1.0)
    table = green_functions(s, 10, 4)
    expected = [1.0, 1.2, 1.12, 0.96, 0.7936]
    assert np.allclose(table.values, expected, rtol=0, atol=1e-14)


def test_recurrence_matches_determinant_oracle_random(rng):
    for _ in range(25):
        s = random_schedule(rng, -20, 20)
        t = int(rng.integers(-5, 15))
        table = green_functions(s, t, 12)
        for k in range(1, 13):
            det = xi_determinant_oracle(s, t, k)
            assert det == pytest.approx(table.xi(k), rel=1e-10, abs=1e-12)


def test_anchor_shift_recurrence_holds(rng):
    # xi_{t,k} = phi1(t) xi_{t-1,k-1} + phi2(t) xi_{t-2,k-2}
    for _ in range(10):
        s = random_schedule(rng, -30, 30)
        t = int(rng.integers(0, 20))
        cur = green_functions(s, t, 10)
        lag1 = green_functions(s, t - 1, 10)
        lag2 = green_functions(s, t - 2, 10)
        tup = s.at(t)
        for k in range(2, 11):
            combined = tup.phi1 * lag1.xi(k - 1) + tup.phi2 * lag2.xi(k - 2)
            assert cur.xi(k) == pytest.approx(combined, rel=1e-12, abs=1e-12)


def test_stream_is_lazy_and_consistent_with_table(rng):
    s = random_schedule(rng, -40, 10)
    stream = xi_stream(s, 5)
    head = [next(stream) for _ in range(8)]
    table = green_functions(s, 5, 7)
    assert np.allclose(head, table.values)


def test_second_solution_identity(rng):
    for _ in range(10):
        s = random_schedule(rng, -30, 30)
        t = int(rng.integers(0, 20))
        for k in range(1, 21):
            expected = s.at(t - k + 1).phi2 * xi(s, t, k - 1)
            assert xi_second(s, t, k) == pytest.approx(expected, abs=1e-14)


def test_second_solution_matches_its_determinant(rng):
    for _ in range(10):
        s = random_schedule(rng, -30, 30)
        t = int(rng.integers(0, 20))
        k = int(rng.integers(1, 13))
        det = xi_second_determinant_oracle(s, t, k)
        assert det == pytest.approx(xi_second(s, t, k), rel=1e-10, abs=1e-12)


def test_matrix_layout():
    s = ConstantSchedule(0.0, 0.7, -0.1, 1.0)
    mat = fundamental_matrix(s, 10, 3)
    assert np.allclose(mat, [[0.7, -1.0, 0.0],
                             [-0.1, 0.7, -1.0],
                             [0.0, -0.1, 0.7]])


def test_oracle_cap():
    s = ConstantSchedule(0.0, 0.5, 0.1, 1.0)
    with pytest.raises(OracleCapError):
        xi_determinant_oracle(s, 0, 65)


def test_constant_closed_form_distinct_roots():
    # 1 - 1.2 z + 0.32 z^2 factors with roots 0.8 and 0.4
    for k in range(31):
        closed = (0.8 ** (k + 1) - 0.4 ** (k + 1)) / 0.4
        assert constant_xi(1.2, -0.32, k) == pytest.approx(closed, rel=1e-12)


def test_constant_closed_form_repeated_root():
    # phi1 = 1.0, phi2 = -0.25 gives the double root 0.5
    for k in range(25):
        assert constant_xi(1.0, -0.25, k) == pytest.approx(
            (k + 1) * 0.5 ** k, rel=1e-9)


def test_constant_closed_form_complex_roots_match_recurrence():
    s = ConstantSchedule(0.0, 0.6, -0.8, 1.0)
    table = green_functions(s, 0, 20)
    for k in range(21):
        assert constant_xi(0.6, -0.8, k) == pytest.approx(
            table.xi(k), rel=1e-10, abs=1e-12)


def test_constant_closed_form_agrees_with_schedule_recurrence(rng):
    for _ in range(20):
        phi1 = float(rng.uniform(-1.5, 1.5))
        phi2 = float(rng.uniform(-1.0, 1.0))
        s = ConstantSchedule(0.0, phi1, phi2, 1.0)
        table = green_functions(s, 0, 15)
        for k in range(16):
            assert constant_xi(phi1, phi2, k) == pytest.approx(
                table.xi(k), rel=1e-9, abs=1e-9)
