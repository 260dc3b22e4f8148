import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def prop2b_family():
    from projadj import RegionFamily, make_prop2b_region

    return RegionFamily.rotation_invariant(make_prop2b_region())


@pytest.fixture(scope="session")
def small_artifact(prop2b_family):
    from projadj import CounterexampleConfig, build_counterexample

    return build_counterexample(CounterexampleConfig(family=prop2b_family, levels=2, truncation=5, grid=512,
                                                     family_spec="prop2b"))
