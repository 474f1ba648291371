import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st_
from scipy.stats import ks_2samp, linregress

from rwrsim.stable import StableLaw, sample_stable
from rwrsim.stats import (
    SampleSet,
    default_hill_k,
    empirical_cf,
    hill_estimator,
    ks_critical_value,
    ks_distance,
    loglog_slope,
)


class TestSampleSet:
    def test_nonempty_required(self):
        with pytest.raises(ValueError):
            SampleSet(np.array([]))
        s = SampleSet([1.0, 2.0], label="demo")
        assert len(s) == 2


class TestHill:
    def test_exact_pareto_quantiles(self):
        # deterministic inverse-CDF sequence of a pure power law
        n, a = 1_000_000, 1.7
        u = (np.arange(1, n + 1) - 0.5) / n
        x = u ** (-1.0 / a)
        est = hill_estimator(x, n // 10)
        assert abs(est - a) / a < 0.02

    def test_degenerate_sample(self):
        with pytest.raises(ValueError):
            hill_estimator(np.ones(100), 10)

    def test_requires_positive(self):
        with pytest.raises(ValueError):
            hill_estimator(np.array([1.0, -2.0, 3.0]), 2)

    def test_k_range(self):
        x = np.arange(1.0, 11.0)
        with pytest.raises(ValueError):
            hill_estimator(x, 1)
        with pytest.raises(ValueError):
            hill_estimator(x, 10)

    def test_stable_draws(self, rng):
        x = np.abs(sample_stable(StableLaw(1.5, 1.0, 0.0), rng, 1_000_000))
        est = hill_estimator(x, 1000)
        assert abs(est - 1.5) < 0.1

    @given(c=st_.floats(1e-6, 1e6))
    @settings(max_examples=30)
    def test_scale_invariance(self, c):
        x = (np.arange(1, 2001) ** -0.8)[::-1].copy()
        a = hill_estimator(x, 100)
        b = hill_estimator(c * x, 100)
        assert abs(a - b) <= 1e-12 * abs(a)

    def test_default_k_rule(self):
        assert default_hill_k(100_000) == math.ceil(100_000 ** 0.6)


class TestLogLogSlope:
    def test_exact_square(self):
        ns = [10, 100, 1000, 10000]
        slope, se = loglog_slope([(n, n ** 2) for n in ns])
        assert slope == pytest.approx(2.0)
        assert se == pytest.approx(0.0, abs=1e-12)

    def test_constant_absorbed(self):
        ns = [8, 64, 512]
        slope, _ = loglog_slope([(n, 37.0 * n ** 1.5) for n in ns])
        assert slope == pytest.approx(1.5)

    def test_agrees_with_reference_regression(self, rng):
        ns = np.array([2 ** k for k in range(5, 13)], dtype=float)
        vals = 3.0 * ns ** 1.2 * np.exp(rng.normal(0, 0.05, ns.size))
        slope, se = loglog_slope(list(zip(ns, vals)))
        ref = linregress(np.log(ns), np.log(vals))
        assert slope == pytest.approx(ref.slope)
        assert se == pytest.approx(ref.stderr)

    def test_validation(self):
        with pytest.raises(ValueError):
            loglog_slope([(1, 1.0), (2, 2.0)])
        with pytest.raises(ValueError):
            loglog_slope([(1, 1.0), (2, -2.0), (3, 3.0)])


class TestEmpiricalCf:
    def test_zero_samples_or_zero_u(self, rng):
        v, sr, si = empirical_cf(np.zeros(100), 2.0)
        assert v == 1.0 + 0.0j and sr == 0.0
        x = rng.normal(size=100)
        v, _, _ = empirical_cf(x, 0.0)
        assert v == 1.0 + 0.0j

    def test_modulus_bound(self, rng):
        x = rng.standard_cauchy(1000)
        v, _, _ = empirical_cf(x, 0.7)
        assert abs(v) <= 1.0

    def test_against_stable_cf(self, rng):
        x = sample_stable(StableLaw(1.5, 1.0, 0.0), rng, 1_000_000)
        v, sr, si = empirical_cf(x, 1.0)
        assert abs(v.real - math.exp(-1.0)) < 3 * sr
        assert abs(v.imag) < 3 * si

    def test_sampleset_accepted(self):
        v, _, _ = empirical_cf(SampleSet(np.zeros(10)), 1.0)
        assert v == 1.0 + 0.0j


class TestKs:
    def test_identical_samples(self, rng):
        x = rng.normal(size=500)
        d, p = ks_distance(x, x)
        assert d == 0.0 and p == 1.0

    def test_disjoint_supports(self):
        d, _ = ks_distance(np.arange(10.0), np.arange(100.0, 110.0))
        assert d == 1.0

    def test_symmetric(self, rng):
        a, b = rng.normal(size=300), rng.normal(1.0, 1.0, size=400)
        d1, p1 = ks_distance(a, b)
        d2, p2 = ks_distance(b, a)
        assert d1 == d2 and p1 == p2
        assert 0.0 <= d1 <= 1.0

    def test_against_scipy(self, rng):
        a, b = rng.normal(size=800), rng.normal(0.2, 1.1, size=900)
        d, p = ks_distance(a, b)
        ref = ks_2samp(a, b, method="asymp")
        assert d == pytest.approx(ref.statistic)
        assert p == pytest.approx(ref.pvalue, abs=0.02)

    def test_critical_value_formula(self):
        # c(0.01) = sqrt(-ln(0.005)/2)
        want = math.sqrt(-0.5 * math.log(0.005)) * math.sqrt(2 / 1000)
        assert ks_critical_value(1000, 1000, 0.01) == pytest.approx(want)

    @pytest.mark.slow
    def test_null_pvalue_uniformity(self, rng):
        law = StableLaw(1.5, 1.0, 0.0)
        trials = 1000
        rejected = 0
        for _ in range(trials):
            a = sample_stable(law, rng, 10_000)
            b = sample_stable(law, rng, 10_000)
            _, p = ks_distance(a, b)
            rejected += p < 0.05
        frac = rejected / trials
        assert abs(frac - 0.05) < 0.02
