import numpy as np
import pytest

from tvar2 import CoefficientTuple, GenericSchedule


def random_schedule(rng, t_lo, t_hi, coeff_range=1.0, sigma2=None):
    """Schedule backed by a frozen table of random coefficients.

    Times outside [t_lo, t_hi] raise, so tests cannot silently read
    beyond the window they asked for.
    """
    table = {}
    for t in range(t_lo, t_hi + 1):
        s2 = sigma2 if sigma2 is not None else float(rng.uniform(0.2, 2.0))
        table[t] = CoefficientTuple(
            float(rng.uniform(-coeff_range, coeff_range)),
            float(rng.uniform(-coeff_range, coeff_range)),
            float(rng.uniform(-coeff_range, coeff_range)),
            s2)
    return GenericSchedule(lambda t: table[t])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
