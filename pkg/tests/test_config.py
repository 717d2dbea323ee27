import pytest

from tvar2 import (BreakSchedule, ConfigError, ConstantSchedule,
                   CyclicalSchedule, GenericSchedule, PeriodicSchedule, dump,
                   load, schedule_from_dict, schedule_to_dict)

CONSTANT_YAML = """
schema_version: 1
schedule:
  kind: constant
  phi0: 0.5
  phi1: 1.2
  phi2: -0.32
  sigma2: 2.0
params:
  t: 10
  k: 3
"""


def test_load_constant():
    schedule, params = load(CONSTANT_YAML)
    assert isinstance(schedule, ConstantSchedule)
    assert schedule.at(7).phi1 == 1.2
    assert params == {"t": 10, "k": 3}


def test_round_trip_all_kinds():
    samples = [
        ConstantSchedule(0.1, 0.5, -0.2, 1.0),
        PeriodicSchedule([(0.1, 0.5, -0.2, 1.0), (0.2, -0.3, 0.4, 2.0)]),
        CyclicalSchedule(5, [2], [(0.0, 0.5, -0.2, 1.0),
                                  (0.0, -0.3, 0.4, 2.0)]),
        BreakSchedule(100, 8, [3, 6], [(0.0, 0.5, -0.2, 1.0),
                                       (0.0, -0.3, 0.4, 2.0),
                                       (0.1, 0.2, 0.1, 0.5)]),
    ]
    for schedule in samples:
        text = dump(schedule)
        reparsed, params = load(text)
        assert params == {}
        if isinstance(schedule, BreakSchedule):
            times = range(schedule.anchor - schedule.horizon,
                          schedule.anchor + 1)
        else:
            times = range(1, 101)
        for t in times:
            assert reparsed.at(t) == schedule.at(t)


def test_unknown_top_level_key_named():
    with pytest.raises(ConfigError, match="'schedul'"):
        load("schema_version: 1\nschedul: {kind: constant}\n")


def test_unknown_schedule_key_named():
    with pytest.raises(ConfigError, match="'phi3'"):
        schedule_from_dict({"kind": "constant", "phi0": 0, "phi1": 0.5,
                            "phi2": 0.1, "phi3": 0.0, "sigma2": 1.0})


def test_unknown_param_key_named():
    text = CONSTANT_YAML.replace("k: 3", "horizn: 3")
    with pytest.raises(ConfigError, match="'horizn'"):
        load(text)


def test_missing_tuple_key_named():
    with pytest.raises(ConfigError, match="'sigma2'"):
        schedule_from_dict({"kind": "constant", "phi0": 0, "phi1": 0.5,
                            "phi2": 0.1})


def test_bad_kind_rejected():
    with pytest.raises(ConfigError, match="'kind'"):
        schedule_from_dict({"kind": "seasonal"})


def test_schema_version_required():
    with pytest.raises(ConfigError, match="schema_version"):
        load("schedule: {kind: constant, phi0: 0, phi1: 0, phi2: 0, sigma2: 1}")


def test_invalid_yaml_rejected():
    with pytest.raises(ConfigError, match="invalid YAML"):
        load("schedule: [unclosed")


def test_generic_schedule_not_serializable():
    s = GenericSchedule(lambda t: (0.0, 0.5, 0.1, 1.0))
    with pytest.raises(ConfigError, match="not serializable"):
        schedule_to_dict(s)


def test_sigma2_bounds_round_trip_default_only():
    s = ConstantSchedule(0.0, 0.5, 0.1, 1.0, sigma2_bounds=(1e-6, 1e6))
    data = {"kind": "constant", "phi0": 0.0, "phi1": 0.5, "phi2": 0.1,
            "sigma2": 1.0, "sigma2_bounds": [1e-6, 1e6]}
    rebuilt = schedule_from_dict(data)
    assert rebuilt.sigma2_bounds == s.sigma2_bounds
