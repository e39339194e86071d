import os

from hypothesis import HealthCheck, settings

settings.register_profile("ci", max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("dev", deadline=None)


def pytest_generate_tests(metafunc):
    os.environ.setdefault("HYPOTHESIS_PROFILE", "dev")
    settings.load_profile(os.environ["HYPOTHESIS_PROFILE"])
