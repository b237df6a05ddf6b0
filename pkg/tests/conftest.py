import pytest

from esdp.core import Constant, EconomicEnvironment, Scenario


@pytest.fixture
def baseline_env():
    # factor-3 speedup, 0.05 USD/s, 600 s delay: break-even for a 10 USD reward
    return EconomicEnvironment(speedup=3.0, cost_rate=0.05, honest_delay=600.0)


@pytest.fixture
def baseline_scenario(baseline_env):
    return Scenario(env=baseline_env, reward=Constant(10.0))
