import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st_

from rwrsim.scenery import Scenery, cumulative_scenery, keyed_scenery_values, scenery_at
from rwrsim.stable import SceneryLaw, sample_scenery_values, sample_stable
from rwrsim.stats import ks_critical_value, ks_distance
from rwrsim.walk import generate_walk, visited_range
from rwrsim.rwrs import build_rwrs
from rwrsim.stable import WalkIncrementLaw

LAW = SceneryLaw.exact_stable(1.5, 1.0, 0.0)


def test_bitwise_determinism_across_instances():
    a = Scenery(LAW, 123, replica=4)
    b = Scenery(LAW, 123, replica=4)
    assert a.at(5) == b.at(5)
    assert a.at(-17) == b.at(-17)
    c = Scenery(LAW, 123, replica=5)
    assert c.at(5) != a.at(5)


@given(perm=st_.permutations(list(range(-6, 7))))
@settings(max_examples=25)
def test_order_independence(perm):
    ref = Scenery(LAW, 77)
    ordered = {x: ref.at(x) for x in range(-6, 7)}
    shuffled = Scenery(LAW, 77)
    for x in perm:
        assert shuffled.at(x) == ordered[x]


def test_values_matches_scalar_access_and_handles_repeats():
    sc = Scenery(LAW, 9, replica=1)
    sites = np.array([3, -1, 3, 0, -1, 7, 3])
    vals = sc.values(sites)
    assert vals.shape == sites.shape
    ref = Scenery(LAW, 9, replica=1)
    assert np.array_equal(vals, np.array([ref.at(int(x)) for x in sites]))
    assert sc.cache_size == 4


def test_scenery_at_wrapper():
    sc = Scenery(LAW, 9)
    assert scenery_at(sc, 3) == sc.at(3)


def test_lag_one_independence_by_permutation_test(rng):
    sc = Scenery(SceneryLaw.exact_stable(2.0, 1.0, 0.0), 31)
    vals = sc.values(np.arange(100_001))
    x, y = vals[:-1], vals[1:]
    corr = np.corrcoef(x, y)[0, 1]
    perm_corrs = np.empty(200)
    for i in range(200):
        perm_corrs[i] = np.corrcoef(x, rng.permutation(y))[0, 1]
    assert abs(corr) < 3 * perm_corrs.std(ddof=1)


def test_marginal_against_direct_sampler(rng):
    reps = 100_000
    first = np.empty(reps)
    for r in range(0, reps, 20000):
        block = [Scenery(LAW, 555, replica=i).at(0) for i in range(r, r + 20000)]
        first[r:r + 20000] = block
    direct = sample_scenery_values(LAW, rng, reps)
    d, _ = ks_distance(first, direct)
    assert d < ks_critical_value(reps, reps, 0.01)


def test_cumulative_basics():
    sc = Scenery(LAW, 202)
    assert cumulative_scenery(sc, 0) == sc.at(0)
    total = sc.cumulative(100)
    part = sc.cumulative(60)
    rest = sc.values(np.arange(61, 101)).sum()
    assert total == pytest.approx(part + rest, rel=1e-12)
    with pytest.raises(ValueError):
        sc.cumulative(-1)


def test_cumulative_does_not_grow_cache():
    sc = Scenery(LAW, 203)
    sc.cumulative(5000)
    assert sc.cache_size == 0


@pytest.mark.slow
def test_cumulative_attraction_exact_stable(rng):
    beta = 1.5
    law = SceneryLaw.exact_stable(beta, 1.0, 0.0)
    n, reps = 4000, 3000
    sums = np.empty(reps)
    for r in range(reps):
        sums[r] = Scenery(law, 808, replica=r).cumulative(n)
    sums *= (n + 1) ** (-1 / beta)
    direct = sample_stable(law.stable_params, rng, reps)
    d, _ = ks_distance(sums, direct)
    assert d < ks_critical_value(reps, reps, 0.01)


def test_cache_matches_walk_range_exactly(rng):
    for law in (WalkIncrementLaw.simple_symmetric(),
                WalkIncrementLaw.discrete_pareto(1.5)):
        walk = generate_walk(500, law, rng)
        sc = Scenery(LAW, 99, replica=11)
        build_rwrs(walk, sc)
        assert sc.cache_size == visited_range(walk, 500)


def test_zero_law_keyed_values():
    vals = keyed_scenery_values(SceneryLaw.degenerate_zero(), np.uint64(5),
                                np.arange(10))
    assert vals.shape == (10,) and (vals == 0).all()
