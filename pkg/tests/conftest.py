import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

from choquet_lab.gallery import (make_hj, make_interval_space, make_porcupine,  # noqa: E402
                                 make_square_affine, make_two_point)


@pytest.fixture(scope="session")
def hj_quarter_half():
    return make_hj(1, 2, Fraction(1, 4), Fraction(1, 2))


@pytest.fixture(scope="session")
def hj_thirds():
    return make_hj(1, 2, Fraction(1, 3), Fraction(1, 3))


@pytest.fixture(scope="session")
def small_gallery():
    return [make_interval_space(1, 4), make_interval_space(2, 4, Fraction(-1)),
            make_interval_space(3, 4, Fraction(1, 2)), make_square_affine(), make_two_point(),
            make_porcupine(["t1", "t2", "t3"], ["t1"])]
