import math

import numpy as np
import pytest

from esdp.core import (
    Bounded,
    Constant,
    EconomicEnvironment,
    Empirical,
    Exponential,
    Lognormal,
    MarkovOU,
    Scenario,
    ScenarioValidationError,
    harmonic_number,
    scenario_violations,
    validate_scenario,
)


def test_baseline_scenario_is_valid(baseline_scenario):
    assert validate_scenario(baseline_scenario) is baseline_scenario
    assert scenario_violations(baseline_scenario) == []


def test_small_baseline_delay_is_valid():
    s = Scenario(EconomicEnvironment(3.0, 0.05, 2.0), Constant(10.0))
    assert scenario_violations(s) == []


def test_speedup_below_one_rejected(baseline_env):
    env = EconomicEnvironment(0.5, baseline_env.cost_rate,
                              baseline_env.honest_delay)
    s = Scenario(env, Constant(10.0))
    violations = scenario_violations(s)
    assert len(violations) == 1
    assert "speedup" in violations[0]
    with pytest.raises(ScenarioValidationError):
        validate_scenario(s)


def test_abort_probability_one_rejected(baseline_env):
    s = Scenario(baseline_env, Constant(10.0), abort_probability=1.0)
    violations = scenario_violations(s)
    assert len(violations) == 1
    assert "abort_probability" in violations[0]


def test_all_violations_reported_at_once(baseline_env):
    s = Scenario(EconomicEnvironment(0.5, -1.0, 0.0),
                 Exponential(-3.0),
                 grinding_size=0,
                 abort_probability=1.5,
                 protocol_means=(-1.0,),
                 coalition_size=0,
                 players=0,
                 rounds=0,
                 grinding_cost_exponent=2.0)
    violations = scenario_violations(s)
    for name in ("speedup", "cost_rate", "honest_delay", "reward mean",
                 "grinding_size", "abort_probability", "protocol_means",
                 "coalition_size", "players", "rounds",
                 "grinding_cost_exponent"):
        assert any(name in v for v in violations), name
    with pytest.raises(ScenarioValidationError) as err:
        validate_scenario(s)
    assert err.value.violations == violations


def test_validation_is_idempotent(baseline_scenario):
    once = validate_scenario(baseline_scenario)
    assert validate_scenario(once) is once


def _random_valid_scenarios(count, seed=0):
    rng = np.random.default_rng(seed)
    models = [
        lambda: Constant(float(rng.uniform(0, 100))),
        lambda: Exponential(float(rng.uniform(0, 100))),
        lambda: Lognormal(float(rng.uniform(0.5, 100)),
                          float(rng.uniform(0.1, 400))),
        lambda: Empirical(tuple(rng.uniform(0, 100, rng.integers(1, 8)))),
        lambda: Bounded(float(rng.uniform(0, 500))),
        lambda: MarkovOU(float(rng.uniform(0, 50)), float(rng.uniform(0, 50)),
                         float(rng.uniform(0.01, 1.0)),
                         float(rng.uniform(0, 5))),
    ]
    for _ in range(count):
        env = EconomicEnvironment(float(rng.uniform(1, 10)),
                                  float(rng.uniform(0.001, 1.0)),
                                  float(rng.uniform(1, 10_000)))
        yield Scenario(
            env=env,
            reward=models[rng.integers(len(models))](),
            grinding_size=int(rng.integers(1, 16)),
            abort_probability=float(rng.uniform(0, 0.99)),
            protocol_means=tuple(rng.uniform(0, 100, rng.integers(0, 5))),
            coalition_size=int(rng.integers(1, 10)),
            players=int(rng.integers(1, 20)),
            rounds=int(rng.integers(1, 10)),
            grinding_cost_exponent=float(rng.uniform(0, 1)),
        )


def test_validated_scenarios_pass_downstream_preconditions():
    # anything validate_scenario accepts must run through the closed-form
    # report without tripping a later invariant check
    from esdp.thresholds import esdp

    for scenario in _random_valid_scenarios(60, seed=7):
        assert scenario_violations(scenario) == []
        report = esdp(scenario, candidate_delay=scenario.env.honest_delay)
        assert math.isfinite(report.esdp)
        assert report.secure in (True, False)


def test_harmonic_number_small_values():
    assert harmonic_number(1) == 1.0
    assert harmonic_number(2) == 1.5
    assert harmonic_number(4) == 25.0 / 12.0


def test_harmonic_number_asymptotic_matches_direct_sum():
    n = 10 ** 6 + 1  # first n on the asymptotic branch
    direct = math.fsum(1.0 / i for i in range(1, n + 1))
    assert harmonic_number(n) == pytest.approx(direct, abs=1e-10)


class TestRewardModels:
    def test_constant(self):
        model = Constant(7.5)
        rng = np.random.default_rng(0)
        assert model.mean() == 7.5
        assert model.variance() == 0.0
        assert model.expected_max(50) == 7.5
        assert np.all(model.sample(rng, 10) == 7.5)

    def test_bounded_is_worst_case_point_mass(self):
        model = Bounded(42.0)
        rng = np.random.default_rng(0)
        assert model.mean() == 42.0
        assert model.expected_max(9) == 42.0
        assert np.all(model.sample(rng, 5) == 42.0)

    def test_exponential_moments_and_max(self):
        model = Exponential(10.0)
        rng = np.random.default_rng(1)
        draws = model.sample(rng, 200_000)
        assert draws.mean() == pytest.approx(10.0, abs=3 * draws.std() / 447)
        assert model.variance() == 100.0
        assert model.expected_max(4) == pytest.approx(10.0 * 25.0 / 12.0,
                                                      rel=1e-12)

    def test_lognormal_moment_parameterization(self):
        model = Lognormal(10.0, 25.0)
        rng = np.random.default_rng(2)
        draws = model.sample(rng, 400_000)
        assert draws.mean() == pytest.approx(10.0, abs=0.05)
        assert draws.var() == pytest.approx(25.0, rel=0.05)

    def test_lognormal_expected_max_vs_sampling(self):
        model = Lognormal(10.0, 25.0)
        rng = np.random.default_rng(3)
        draws = model.sample(rng, 4 * 200_000).reshape(200_000, 4)
        maxima = draws.max(axis=1)
        se = maxima.std(ddof=1) / math.sqrt(maxima.size)
        assert model.expected_max(4) == pytest.approx(maxima.mean(),
                                                      abs=3 * se)

    def test_empirical_expected_max_vs_sampling(self):
        model = Empirical((1.0, 5.0, 12.0, 30.0))
        rng = np.random.default_rng(4)
        draws = rng.choice((1.0, 5.0, 12.0, 30.0), size=(200_000, 3))
        maxima = draws.max(axis=1)
        se = maxima.std(ddof=1) / math.sqrt(maxima.size)
        assert model.expected_max(3) == pytest.approx(maxima.mean(),
                                                      abs=3 * se)
        assert model.mean() == pytest.approx(12.0)
        assert model.variance() == pytest.approx(np.var([1.0, 5.0, 12.0, 30.0]))

    def test_empirical_requires_samples(self):
        assert Empirical(()).violations()

    def test_lognormal_requires_positive_variance(self):
        assert Lognormal(10.0, 0.0).violations()
        assert Lognormal(0.0, 25.0).violations()

    def test_markov_ou_transition_moments(self):
        model = MarkovOU(12.0, 10.0, 0.1, 2.0)
        dt = 1.0
        decay = math.exp(-0.1 * dt)
        assert model.transition_mean(12.0, dt) == pytest.approx(
            10.0 + 2.0 * decay)
        expected_var = 4.0 * (1 - math.exp(-0.2 * dt)) / 0.2
        assert model.transition_std(dt) ** 2 == pytest.approx(expected_var)
        assert model.stationary_std() == pytest.approx(2.0 / math.sqrt(0.2))

    def test_markov_ou_horizon_draws(self):
        model = MarkovOU(12.0, 10.0, 0.1, 2.0)
        rng = np.random.default_rng(5)
        # short horizon: reflection mass at 0 is negligible, so the
        # unreflected conditional moments apply
        draws = model.sample(rng, 200_000, horizon=5.0)
        se = draws.std(ddof=1) / math.sqrt(draws.size)
        assert draws.mean() == pytest.approx(model.mean(horizon=5.0),
                                             abs=3 * se + 5e-3)

    def test_markov_ou_reflection_lifts_the_far_mean(self):
        # with mass near zero the reflected draws sit above the plain
        # conditional mean; the moments knowingly ignore that shift
        model = MarkovOU(12.0, 10.0, 0.1, 2.0)
        rng = np.random.default_rng(5)
        draws = model.sample(rng, 200_000, horizon=50.0)
        assert draws.mean() > model.mean(horizon=50.0)

    def test_markov_ou_expected_max_vs_sampling(self):
        model = MarkovOU(10.0, 10.0, 0.1, 2.0)
        rng = np.random.default_rng(6)
        horizon = 30.0
        m = model.transition_mean(10.0, horizon)
        s = model.transition_std(horizon)
        draws = np.abs(rng.normal(m, s, (200_000, 5)))
        maxima = draws.max(axis=1)
        se = maxima.std(ddof=1) / math.sqrt(maxima.size)
        assert model.expected_max(5, horizon=horizon) == pytest.approx(
            maxima.mean(), abs=3 * se)

    def test_markov_ou_needs_positive_reversion(self):
        assert MarkovOU(10.0, 10.0, 0.0, 2.0).violations()

    def test_markov_ou_requires_horizon_for_draw_moments(self):
        with pytest.raises(ValueError):
            MarkovOU(10.0, 10.0, 0.1, 2.0).expected_max(3)
