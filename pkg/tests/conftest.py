import pytest

from cinnamon.har import dataset_from_samples
from cinnamon.simulate import default_activity_script, default_scenario, emit_imu


@pytest.fixture()
def scenario():
    return default_scenario()


@pytest.fixture(scope="session")
def default_features():
    """Feature vectors for the full collection-protocol dataset, seed 42."""
    samples = emit_imu(default_activity_script(), seed=42)
    return dataset_from_samples(samples)


@pytest.fixture(scope="session")
def small_features():
    """A reduced dataset (2 sessions x 12 s per label) for fast model tests."""
    samples = emit_imu(
        default_activity_script(sessions_per_label=2, session_duration_s=12.0), seed=7
    )
    return dataset_from_samples(samples)
