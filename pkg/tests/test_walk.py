import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st_

from rwrsim.stable import WalkIncrementLaw, stable_cf, sample_walk_increments
from rwrsim.stats import loglog_slope
from rwrsim.walk import (
    WalkPath,
    batch_walk_stats,
    generate_walk,
    local_time,
    local_time_field,
    max_abs,
    self_intersections,
    visited_range,
)

SIMPLE = WalkIncrementLaw.simple_symmetric()


def path_of(*positions):
    return WalkPath(np.array(positions, dtype=np.int64), SIMPLE)


def brute_v(pos, m):
    return sum(1 for i in range(m + 1) for j in range(m + 1) if pos[i] == pos[j])


def brute_r(pos, m):
    return len(set(pos[: m + 1]))


class TestGeneration:
    def test_zero_length(self, rng):
        w = generate_walk(0, SIMPLE, rng)
        assert w.positions.tolist() == [0]
        assert w.horizon == 0

    def test_negative_length(self, rng):
        with pytest.raises(ValueError):
            generate_walk(-1, SIMPLE, rng)

    def test_determinism(self):
        a = generate_walk(500, SIMPLE, np.random.default_rng(42))
        b = generate_walk(500, SIMPLE, np.random.default_rng(42))
        assert np.array_equal(a.positions, b.positions)

    def test_increments_in_support(self, rng):
        w = generate_walk(1000, SIMPLE, rng)
        assert set(np.unique(np.diff(w.positions))) <= {-1, 1}

    def test_must_start_at_zero(self):
        with pytest.raises(ValueError):
            path_of(1, 2)

    @pytest.mark.slow
    def test_normalized_endpoint_cf(self, rng):
        # empirical CF of n**-0.5 S_n against the implied stable law
        n, reps = 4096, 4000
        endpoints = sample_walk_increments(SIMPLE, rng, (reps, n)).sum(axis=1)
        z = np.exp(1j * endpoints * n ** -0.5)
        want = stable_cf(SIMPLE.limit_law, 1.0)
        assert abs(z.mean() - want) < 3 / math.sqrt(reps)


class TestLocalTime:
    def test_origin(self, rng):
        w = generate_walk(10, SIMPLE, rng)
        assert local_time(w, 0, 0) == 1.0

    def test_all_up_path(self):
        n = 8
        w = path_of(*range(n + 1))
        for x in range(n + 1):
            assert local_time(w, x, n) == 1.0
        assert local_time(w, n + 1, n) == 0.0

    def test_hand_interpolation(self):
        w = path_of(0, 1, 0)
        assert local_time(w, 0, 1.5) == pytest.approx(1.5)
        assert local_time(w, 1, 1.5) == pytest.approx(1.0)

    def test_domain_error(self):
        w = path_of(0, 1)
        with pytest.raises(ValueError):
            local_time(w, 0, 1.5)
        with pytest.raises(ValueError):
            local_time(w, 0, -0.5)

    def test_monotone_in_time(self, rng):
        w = generate_walk(60, SIMPLE, rng)
        grid = np.linspace(0, 60, 241)
        for x in (0, 1, -2):
            vals = [local_time(w, x, s) for s in grid]
            assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))

    def test_field_total_is_time_plus_one(self, rng):
        for _ in range(10):
            w = generate_walk(100, SIMPLE, rng)
            for s in (0, 17, 100, 33.25):
                assert local_time_field(w, s).total == pytest.approx(s + 1.0)

    def test_field_count_accessor(self, rng):
        w = generate_walk(50, SIMPLE, rng)
        fld = local_time_field(w, 50)
        for x in range(-5, 6):
            assert fld.count_at(x) == local_time(w, x, 50)


class TestFunctionals:
    def test_time_zero(self, rng):
        w = generate_walk(5, SIMPLE, rng)
        assert self_intersections(w, 0) == 1.0
        assert visited_range(w, 0) == 1.0

    def test_all_up_path(self):
        w = path_of(*range(9))
        assert self_intersections(w, 8) == 9.0
        assert visited_range(w, 8) == 9.0

    def test_hand_examples(self):
        w = path_of(0, 1, 0)
        assert self_intersections(w, 2) == 5.0
        assert brute_v([0, 1, 0], 2) == 5
        w2 = path_of(0, 1, 0, -1)
        assert visited_range(w2, 3) == 3.0

    def test_max_abs(self):
        assert max_abs(path_of(0), 0) == 0
        assert max_abs(path_of(0, 1, 0, -1), 3) == 1

    def test_range_bounded_by_running_max(self, rng):
        inc = sample_walk_increments(SIMPLE, rng, (10_000, 128))
        pos = np.zeros((10_000, 129), dtype=np.int64)
        np.cumsum(inc, axis=1, out=pos[:, 1:])
        st = batch_walk_stats(pos)
        assert (st["r"] <= 2 * st["m"] + 1).all()

    def test_monotone_in_time(self, rng):
        w = generate_walk(40, SIMPLE, rng)
        grid = np.linspace(0, 40, 161)
        for fn in (self_intersections, visited_range):
            vals = [fn(w, s) for s in grid]
            assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
        m_vals = [max_abs(w, k) for k in range(41)]
        assert all(b >= a for a, b in zip(m_vals, m_vals[1:]))

    @given(steps=st_.lists(st_.sampled_from([-1, 0, 1]), max_size=8))
    @settings(max_examples=60)
    def test_identities_vs_brute_force(self, steps):
        pos = np.concatenate([[0], np.cumsum(steps, dtype=np.int64)]) \
            if steps else np.zeros(1, dtype=np.int64)
        w = WalkPath(pos, SIMPLE)
        n = len(steps)
        fld = local_time_field(w, n)
        assert fld.total == n + 1
        assert self_intersections(w, n) == brute_v(pos.tolist(), n)
        assert visited_range(w, n) == brute_r(pos.tolist(), n)
        assert fld.self_intersections == brute_v(pos.tolist(), n)
        assert fld.range == brute_r(pos.tolist(), n)


class TestBatchStats:
    def test_against_api_on_random_paths(self, rng):
        for law in (SIMPLE, WalkIncrementLaw.discrete_pareto(1.6)):
            for _ in range(20):
                w = generate_walk(int(rng.integers(1, 200)), law, rng)
                st = batch_walk_stats(w.positions[None, :])
                n = w.horizon
                assert st["v"][0] == self_intersections(w, n)
                assert st["r"][0] == visited_range(w, n)
                assert st["m"][0] == max_abs(w, n)
                fld = local_time_field(w, n)
                assert st["sup_n"][0] == fld.counts.max()

    def test_requires_matrix(self):
        with pytest.raises(ValueError):
            batch_walk_stats(np.zeros(5, dtype=np.int64))


class TestScalings:
    @pytest.mark.slow
    def test_moment_slopes_simple_walk(self, rng):
        ns = [2 ** k for k in range(8, 13)]
        mean_v, mean_r = [], []
        for n in ns:
            reps = 2000
            v = np.empty(reps)
            r = np.empty(reps)
            for lo in range(0, reps, 500):
                hi = min(lo + 500, reps)
                inc = sample_walk_increments(SIMPLE, rng, (hi - lo, n))
                pos = np.zeros((hi - lo, n + 1), dtype=np.int64)
                np.cumsum(inc, axis=1, out=pos[:, 1:])
                st = batch_walk_stats(pos)
                v[lo:hi] = st["v"]
                r[lo:hi] = st["r"]
            mean_v.append(v.mean())
            mean_r.append(r.mean())
        slope_v, _ = loglog_slope(list(zip(ns, mean_v)))
        slope_r, _ = loglog_slope(list(zip(ns, mean_r)))
        assert abs(slope_v - 1.5) < 0.05
        assert abs(slope_r - 0.5) < 0.05

    @pytest.mark.slow
    def test_rescaled_sup_local_time_decreases(self, rng):
        # delta for (alpha, beta) = (2, 2)
        delta = 0.75
        medians = []
        for n in (2 ** 8, 2 ** 10, 2 ** 12, 2 ** 14):
            sups = np.empty(1000)
            for lo in range(0, 1000, 250):
                inc = sample_walk_increments(SIMPLE, rng, (250, n))
                pos = np.zeros((250, n + 1), dtype=np.int64)
                np.cumsum(inc, axis=1, out=pos[:, 1:])
                sups[lo:lo + 250] = batch_walk_stats(pos)["sup_n"]
            medians.append(np.median(sups) * n ** -delta)
        assert all(b < a for a, b in zip(medians, medians[1:]))
