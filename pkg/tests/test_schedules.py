import pytest

from tvar2 import (BreakSchedule, ConstantSchedule, CyclicalSchedule,
                   GenericSchedule, PeriodicSchedule, ScheduleError,
                   season_of, validate, validate_params)


def test_constant_evaluates_same_everywhere():
    s = ConstantSchedule(0.5, 1.2, -0.32, 2.0)
    for t in (-10, 0, 1, 999):
        tup = s.at(t)
        assert tup.phi0 == 0.5
        assert tup.phi1 == 1.2
        assert tup.phi2 == -0.32
        assert tup.sigma2 == 2.0


def test_constant_rejects_nonpositive_sigma2():
    with pytest.raises(ScheduleError, match="sigma2 must be > 0"):
        ConstantSchedule(0.0, 0.5, 0.1, 0.0)
    with pytest.raises(ScheduleError, match="sigma2 must be > 0"):
        ConstantSchedule(0.0, 0.5, 0.1, -1.0)


def test_season_indexing():
    assert [season_of(t, 4) for t in range(1, 10)] == [1, 2, 3, 4, 1, 2, 3, 4, 1]
    assert season_of(0, 4) == 4
    assert season_of(-3, 4) == 1


def test_periodic_shift_invariance():
    s = PeriodicSchedule([(0.1, 0.5, -0.2, 1.0),
                          (0.2, -0.4, 0.3, 1.5),
                          (0.3, 0.8, -0.1, 0.5)])
    assert s.period == 3
    for t in range(-5, 20):
        assert s.at(t) == s.at(t + 3)


def test_cyclical_groups_seasons():
    cycles = [(0.0, 0.5, -0.2, 1.0), (0.0, -0.3, 0.4, 2.0)]
    s = CyclicalSchedule(5, [2], cycles)
    # seasons 1-2 are cycle 1, seasons 3-5 are cycle 2
    assert s.at(1) == s.at(2) == s.cycles[0]
    assert s.at(3) == s.at(4) == s.at(5) == s.cycles[1]
    assert s.at(6) == s.cycles[0]


def test_cyclical_single_cycle_degenerates_to_constant():
    s = CyclicalSchedule(7, [], [(0.1, 0.6, -0.2, 1.0)])
    for t in range(1, 15):
        assert s.at(t) == s.cycles[0]


def test_cyclical_with_every_season_its_own_cycle_matches_periodic():
    tuples = [(0.1, 0.5, -0.2, 1.0), (0.2, -0.4, 0.3, 1.5),
              (0.3, 0.8, -0.1, 0.5), (0.4, 0.2, 0.2, 2.0)]
    cyc = CyclicalSchedule(4, [1, 2, 3], tuples)
    per = PeriodicSchedule(tuples)
    for t in range(-8, 20):
        assert cyc.at(t) == per.at(t)


def test_cyclical_rejects_bad_boundaries():
    cycles = [(0, 0.1, 0.1, 1)] * 3
    with pytest.raises(ScheduleError, match="strictly increasing"):
        CyclicalSchedule(5, [3, 2], cycles)
    with pytest.raises(ScheduleError, match="strictly increasing"):
        CyclicalSchedule(5, [0, 2], cycles)
    with pytest.raises(ScheduleError, match="cycle tuples"):
        CyclicalSchedule(5, [2], cycles)


def test_break_schedule_regimes():
    regimes = [(0.0, 0.5, -0.2, 1.0), (0.0, -0.4, 0.3, 2.0),
               (0.0, 0.9, -0.5, 0.5)]
    s = BreakSchedule(anchor=100, horizon=10, offsets=[3, 7], regimes=regimes)
    # newest regime covers offsets 0..2, middle 3..6, oldest 7..10
    for t in (100, 99, 98):
        assert s.at(t) == s.regimes[0]
    for t in (97, 96, 95, 94):
        assert s.at(t) == s.regimes[1]
    for t in (93, 92, 91, 90):
        assert s.at(t) == s.regimes[2]


def test_break_schedule_window_enforced():
    s = BreakSchedule(50, 5, [2], [(0, 0.5, 0.1, 1), (0, 0.2, 0.1, 1)])
    with pytest.raises(ScheduleError, match="outside break-schedule window"):
        s.at(51)
    with pytest.raises(ScheduleError, match="outside break-schedule window"):
        s.at(44)


def test_break_schedule_rejects_bad_offsets():
    regimes = [(0, 0.1, 0.1, 1)] * 2
    with pytest.raises(ScheduleError, match="strictly increasing"):
        BreakSchedule(0, 5, [5], regimes)
    with pytest.raises(ScheduleError, match="strictly increasing"):
        BreakSchedule(0, 5, [0], regimes)


def test_re_anchored_preserves_relative_structure():
    s = BreakSchedule(100, 6, [3], [(0, 0.5, 0.1, 1), (0, -0.2, 0.3, 2)])
    moved = s.re_anchored(10)
    for offset in range(7):
        assert moved.at(10 - offset) == s.at(100 - offset)


def test_validate_reports_clean_schedule():
    report = validate(ConstantSchedule(0, 0.5, 0.1, 1.0), 1, 40)
    assert report.ok
    assert report.findings == ()


def test_validate_reports_sigma2_violation_without_raising():
    bad = GenericSchedule(lambda t: (0.0, 0.5, 0.1, -1.0 if t == 3 else 1.0))
    report = validate(bad, 1, 5)
    assert not report.ok
    assert any("sigma2" in f for f in report.findings)


def test_validate_reports_bounds_violation():
    s = ConstantSchedule(0, 0.5, 0.1, 5.0, sigma2_bounds=(1e-6, 1.0))
    report = validate(s, 1, 3)
    assert any("outside declared bounds" in f for f in report.findings)


def test_validate_params_captures_construction_error():
    report = validate_params(
        lambda: BreakSchedule(0, 5, [9], [(0, 0.1, 0.1, 1)] * 2))
    assert not report.ok
    assert any("strictly increasing" in f for f in report.findings)


def test_validate_params_accepts_good_builder():
    report = validate_params(lambda: PeriodicSchedule([(0, 0.5, -0.2, 1.0),
                                                       (0, 0.3, 0.1, 1.0)]))
    assert report.ok
