import math

import numpy as np
import pytest
from scipy import stats

from raospacing.sim import (
    ExperimentConfig,
    rep_rng,
    run_experiment,
    sample_uniform,
    sample_von_mises,
    wilson_interval,
)
from raospacing.spacings import TWO_PI, statistic


def bessel_i(order, x, terms=40):
    return sum((x / 2) ** (2 * k + order) / (math.factorial(k) * math.factorial(k + order)) for k in range(terms))


class TestSampleUniform:
    def test_mean_statistic(self):
        rng = np.random.default_rng(5)
        u = np.array([statistic(sample_uniform(10, rng)) for _ in range(100_000)])
        se = u.std(ddof=1) / math.sqrt(u.size)
        assert abs(u.mean() - TWO_PI * 0.9**10) < 3 * se

    def test_range_and_order(self):
        s = sample_uniform(500, np.random.default_rng(1))
        assert np.all((s.angles >= 0) & (s.angles < TWO_PI))
        assert np.all(np.diff(s.angles) >= 0)

    def test_deterministic(self):
        a = sample_uniform(50, rep_rng(9, 3)).angles
        b = sample_uniform(50, rep_rng(9, 3)).angles
        c = sample_uniform(50, rep_rng(9, 4)).angles
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)


class TestSampleVonMises:
    def test_kappa_zero_is_uniform(self):
        s = sample_von_mises(100_000, 1.0, 0.0, np.random.default_rng(2))
        assert stats.kstest(s.angles / TWO_PI, "uniform").pvalue > 0.01

    def test_kappa_03_moments(self):
        theta = sample_von_mises(100_000, 0.0, 0.3, np.random.default_rng(3)).angles
        c, s = np.cos(theta), np.sin(theta)
        ratio = bessel_i(1, 0.3) / bessel_i(0, 0.3)
        assert ratio == pytest.approx(0.1483, abs=5e-5)
        assert abs(s.mean()) < 3 * s.std(ddof=1) / math.sqrt(s.size)
        assert abs(c.mean() - ratio) < 3 * c.std(ddof=1) / math.sqrt(c.size)

    @pytest.mark.parametrize("kappa", [0.3, 2.0, 25.0])
    def test_matches_scipy_distribution(self, kappa):
        mu = 1.0
        theta = sample_von_mises(50_000, mu, kappa, np.random.default_rng(4)).angles
        centred = np.mod(theta - mu + math.pi, TWO_PI) - math.pi
        assert stats.kstest(centred, stats.vonmises(kappa).cdf).pvalue > 0.01

    def test_negative_kappa(self):
        with pytest.raises(ValueError):
            sample_von_mises(10, 0.0, -1.0, np.random.default_rng(0))


class TestWilson:
    def test_against_formula(self):
        k, n, z = 518, 10_000, stats.norm.ppf(0.975)
        p = k / n
        centre = (p + z * z / (2 * n)) / (1 + z * z / n)
        half = z / (1 + z * z / n) * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n))
        low, high = wilson_interval(k, n)
        assert low == pytest.approx(centre - half, rel=1e-9)
        assert high == pytest.approx(centre + half, rel=1e-9)

    def test_zero_successes(self):
        low, high = wilson_interval(0, 2000)
        assert low == 0.0 and 0 < high < 0.003


class TestRunExperiment:
    def test_reproducible(self):
        cfg = ExperimentConfig(n=200, reps=300, seed=42)
        assert run_experiment(cfg) == run_experiment(cfg)

    def test_counts(self):
        rep = run_experiment(ExperimentConfig(n=30, reps=250, seed=1))
        assert rep.accept + rep.reject == rep.reps == 250
        assert rep.rejection_rate == rep.reject / rep.reps
        assert rep.wilson_ci_95[0] <= rep.rejection_rate <= rep.wilson_ci_95[1]

    def test_zero_critical_value_rejects_everything(self):
        short = run_experiment(ExperimentConfig(n=40, reps=50, seed=3, method="fixed_critical_value",
                                                fixed_critical_value_deg=0.0))
        assert short.reject == 50

    @pytest.mark.parametrize("n", [50, 500, 10_000])
    def test_size_calibration(self, n):
        rep = run_experiment(ExperimentConfig(n=n, reps=2000, alpha=0.05, seed=2024))
        low, high = rep.wilson_ci_95
        assert low <= 0.05 <= high, rep

    def test_power_dominates_stale_table(self):
        common = dict(n=10_000, reps=200, alternative="von_mises", kappa=0.3, seed=8)
        gc = run_experiment(ExperimentConfig(**common))
        fixed = run_experiment(
            ExperimentConfig(**common, method="fixed_critical_value", fixed_critical_value_deg=136.94)
        )
        assert gc.rejection_rate > fixed.rejection_rate

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(n=1, reps=10),
            dict(n=10, reps=0),
            dict(n=10, reps=10, alpha=1.0),
            dict(n=10, reps=10, kappa=-0.1),
            dict(n=10, reps=10, alternative="cardioid"),
            dict(n=10, reps=10, method="fixed_critical_value"),
        ],
    )
    def test_config_validation(self, kwargs):
        with pytest.raises(ValueError):
            ExperimentConfig(**kwargs)
