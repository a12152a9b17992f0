import pytest

from gloc import ConfigBundle, NonPeriodic, Periodic, ScenarioConfig


@pytest.fixture
def cfg() -> ScenarioConfig:
    return ScenarioConfig()


@pytest.fixture
def bundle() -> ConfigBundle:
    return ConfigBundle()


@pytest.fixture
def non_periodic() -> NonPeriodic:
    return NonPeriodic(p_a=0.25)


@pytest.fixture
def periodic() -> Periodic:
    return Periodic(m_bc=2400.0, t_rep=0.1)
