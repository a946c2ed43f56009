import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'src'))

# exact arithmetic is slow on the first call of each ring
settings.register_profile('exact', deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.getenv('HYPOTHESIS_PROFILE', 'exact'))

from exact_linear_core import CoefficientField, GradedPolyRing  # noqa: E402

FIELD_SPECS = ['rationals', 'fp:32003']


def pytest_configure(config):
    config.addinivalue_line('markers', "slow: runs a whole family or the acceptance suite")


@pytest.fixture(params=FIELD_SPECS)
def coefficient_field(request):
    return CoefficientField.from_spec(request.param)


@pytest.fixture
def xyz(coefficient_field):
    return GradedPolyRing(('x', 'y', 'z'), (1, 1, 1), coefficient_field)
