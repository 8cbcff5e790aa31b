import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def cache_path(tmp_path, monkeypatch):
    path = tmp_path / "tables.jsonl"
    monkeypatch.setenv("SMALLDISC_CACHE", str(path))
    return path
