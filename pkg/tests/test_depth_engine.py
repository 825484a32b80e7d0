import math

import numpy as np
import pytest

from fuzzydepth.datasets import (
    TREES_FREQUENCIES,
    two_interval_example,
    ray_direction,
    symmetric_pair_rv,
    trees_chain_sample,
)
from fuzzydepth.depth_engine import (
    DiscreteCdfOracle,
    DiscreteFuzzyRV,
    GaussianShiftOracle,
    containment_probability,
    empirical_depths,
    empirical_depths_many,
    in_family_b,
    median_trapezoid,
    pair_measure,
    population_depths,
    rank_queries,
    rank_sample,
    univariate_simplicial_depth,
)
from fuzzydepth.errors import DomainError, QuadratureError, SampleTooSmall, WeightError
from fuzzydepth.fuzzy_core import (
    Sample,
    Trapezoid,
    add,
    as_fuzzy,
    convex_combination,
    crisp_interval,
    scale,
    singleton,
)
from fuzzydepth.runlog import clear_logs, get_logs
from fuzzydepth.verification import (
    check_affine_invariance,
    check_chain,
    check_empirical_law,
    check_ordering,
    check_u_statistic,
    random_sample,
    random_trapezoid,
)


def test_two_interval_example_first_scenario():
    worked = two_interval_example()
    red = empirical_depths(worked.sample, worked.queries["R_i"])
    green = empirical_depths(worked.sample, worked.queries["G_i"])
    assert red.d_ms == pytest.approx(5 / 8, abs=1e-12)
    assert green.d_ms == pytest.approx(5 / 8, abs=1e-12)
    assert red.d_fs == pytest.approx(1 / 2, abs=1e-12)
    assert green.d_fs == pytest.approx(1 / 4, abs=1e-12)


def test_two_interval_example_second_scenario():
    worked = two_interval_example()
    red = empirical_depths(worked.sample, worked.queries["R_ii"])
    green = empirical_depths(worked.sample, worked.queries["G_ii"])
    assert red.d_ms == pytest.approx(1 / 8, abs=1e-12)
    assert green.d_ms == pytest.approx(1 / 4, abs=1e-12)
    assert red.d_fs == 0.0
    assert green.d_fs == 0.0


def test_pair_measure_per_direction():
    worked = two_interval_example()
    left, right = worked.sample.items
    query = worked.queries["G_i"]
    assert pair_measure(query, left, right, 1) == pytest.approx(1.0, abs=1e-12)
    assert pair_measure(query, left, right, -1) == pytest.approx(0.25, abs=1e-12)


def test_depth_needs_two_observations():
    with pytest.raises(SampleTooSmall):
        empirical_depths(Sample.of([singleton(0.0)]), singleton(0.0))
    single_repeated = Sample.of([singleton(0.0)], counts=[2])
    assert empirical_depths(single_repeated, singleton(0.0)).d_ns == 1.0


def test_with_diagonal_pairs():
    sample = two_interval_example().sample
    query = crisp_interval(1.0, 2.0)
    assert empirical_depths(sample, query).d_ns == 1.0
    assert empirical_depths(sample, query, pairs="with-diagonal").d_ns == pytest.approx(2 / 3, abs=1e-12)
    with pytest.raises(DomainError):
        empirical_depths(sample, query, pairs="diagonal")


def test_worker_count_does_not_change_results():
    rng = np.random.default_rng(5)
    sample = random_sample(rng)
    queries = [random_trapezoid(rng) for _ in range(12)]
    assert empirical_depths_many(sample, queries, workers=4) == empirical_depths_many(sample, queries)


def test_ordering_of_the_three_depths():
    result = check_ordering(seed=2, cases=200)
    assert result.passed, result.detail


def test_affine_invariance_including_negative_scale():
    result = check_affine_invariance(seed=2, cases=100)
    assert result.passed, result.detail


def test_matches_naive_pair_loop():
    result = check_u_statistic(seed=2, cases=100)
    assert result.passed, result.detail


def test_chain_depths_coincide():
    result = check_chain()
    assert result.passed, result.detail
    sample = trees_chain_sample()
    assert sample.n == 279
    n = sample.n
    below = 0
    for item, count, values in zip(sample.items, TREES_FREQUENCIES, empirical_depths_many(sample, sample.items)):
        above = n - below - count
        expected = 1.0 - (math.comb(below, 2) + math.comb(above, 2)) / math.comb(n, 2)
        assert values.d_ns == pytest.approx(expected, abs=1e-12)
        assert values.d_fs == pytest.approx(expected, abs=1e-12)
        below += count


def test_ray_counterexample_distinct_pairs():
    rv = symmetric_pair_rv()
    centre, direction = ray_direction()
    for n in (1, 10, 1_000, 1_000_000):
        depths = population_depths(rv, add(centre, scale(float(n), direction)), pairs="distinct")
        assert depths.d_fs == pytest.approx(0.5 + 0.5 / n, abs=1e-12)
        assert depths.d_ms == pytest.approx(0.75 + 0.25 / n, abs=1e-12)
        assert depths.d_fs >= 0.5


def test_ray_counterexample_iid_pairs():
    rv = symmetric_pair_rv()
    centre, direction = ray_direction()
    for n in (1, 10, 1_000):
        query = add(centre, scale(float(n), direction))
        depths = population_depths(rv, query)
        up = 0.25 + 0.25 / n
        assert depths.d_fs == pytest.approx(up, abs=1e-12)
        assert depths.d_ms == pytest.approx(0.5 * (up + 0.5), abs=1e-12)


def test_containment_probability_formula():
    rv = DiscreteFuzzyRV.of([singleton(0.0), singleton(1.0), singleton(2.0)], [0.2, 0.5, 0.3])
    # F(1) = 0.7 with an atom of 0.5 at t = 1
    assert containment_probability(rv, singleton(1.0), 1, 0.3) == pytest.approx(1 - 0.3**2 - 0.2**2, abs=1e-15)
    assert containment_probability(rv, singleton(5.0), 1, 0.3) == 0.0
    assert containment_probability(DiscreteFuzzyRV.of([singleton(1.0)]), singleton(1.0), -1, 0.7) == 1.0
    with pytest.raises(DomainError):
        containment_probability(rv, singleton(1.0), 1, 1.2)


def test_discrete_rv_validation():
    with pytest.raises(WeightError):
        DiscreteFuzzyRV.of([singleton(0.0), singleton(1.0)], [0.5, 0.6])
    with pytest.raises(WeightError):
        DiscreteFuzzyRV.of([singleton(0.0)], [1.0, 0.0])


def test_population_naive_depth_for_discrete_variable():
    rv = DiscreteFuzzyRV.of([crisp_interval(0.0, 1.0), crisp_interval(2.0, 3.0)])
    depths = population_depths(rv, crisp_interval(1.0, 2.0))
    assert depths.d_ns == pytest.approx(0.5, abs=1e-12)
    assert depths.d_ms == pytest.approx(0.5, abs=1e-12)


def test_gaussian_oracle_centre_is_deepest():
    centre = as_fuzzy(Trapezoid(1.0, 2.0, 3.0, 4.0))
    oracle = GaussianShiftOracle(centre, sigma=1.0)
    at_centre = population_depths(oracle, centre)
    assert at_centre.d_ms == pytest.approx(0.5, abs=1e-12)
    assert at_centre.d_fs == pytest.approx(0.5, abs=1e-12)
    rng = np.random.default_rng(8)
    for _ in range(20):
        other = population_depths(oracle, random_trapezoid(rng))
        assert other.d_ms <= at_centre.d_ms + 1e-12
        assert other.d_fs <= at_centre.d_fs + 1e-12


def test_gaussian_oracle_depth_decreases_along_rays():
    centre = as_fuzzy(Trapezoid(1.0, 2.0, 3.0, 4.0))
    direction = Trapezoid(1.0, 2.0, 3.0, 4.0)
    assert in_family_b(direction)
    oracle = GaussianShiftOracle(centre, sigma=1.0)
    previous = population_depths(oracle, centre)
    for n in (0.5, 1.0, 2.0, 8.0, 1e6):
        current = population_depths(oracle, add(centre, scale(n, direction)))
        assert current.d_ms <= previous.d_ms + 1e-12
        assert current.d_fs <= previous.d_fs + 1e-12
        previous = current
    assert previous.d_ms < 1e-9


def test_discrete_surrogate_centre_is_deepest():
    centre = Trapezoid(1.0, 2.0, 3.0, 4.0)
    rv = DiscreteFuzzyRV.of(
        [add(centre, singleton(-1.0)), centre, add(centre, singleton(1.0))],
        [0.4, 0.2, 0.4],
    )
    at_centre = population_depths(rv, centre)
    for shift in (-2.0, -0.5, 0.25, 0.5, 3.0):
        shifted = population_depths(rv, add(centre, singleton(shift)))
        assert shifted.d_ms <= at_centre.d_ms + 1e-12
        assert shifted.d_fs <= at_centre.d_fs + 1e-12


def test_quadrature_matches_exact_discrete_path():
    rng = np.random.default_rng(13)
    rv = DiscreteFuzzyRV.of([random_trapezoid(rng) for _ in range(4)], [0.1, 0.2, 0.3, 0.4])
    query = random_trapezoid(rng)
    exact = population_depths(rv, query)
    approx = population_depths(DiscreteCdfOracle(rv), query, quadrature=4096)
    assert approx.d_ms == pytest.approx(exact.d_ms, abs=5e-3)
    assert approx.d_fs == pytest.approx(exact.d_fs, abs=5e-3)
    with pytest.raises(QuadratureError):
        population_depths(DiscreteCdfOracle(rv), query, quadrature=10)


def test_family_b_membership():
    _, direction = ray_direction()
    assert not in_family_b(direction)
    assert not in_family_b(singleton(0.0))
    assert in_family_b(Trapezoid(-2.0, -1.0, 1.0, 2.0))


def test_univariate_simplicial_depth():
    assert univariate_simplicial_depth(2.0, [1.0, 2.0, 3.0]) == 1.0
    assert univariate_simplicial_depth(0.0, [1.0, 2.0, 3.0]) == 0.0
    assert univariate_simplicial_depth(1.0, [1.0, 2.0, 3.0]) == pytest.approx(2 / 3)
    assert univariate_simplicial_depth(1.5, [1.0, 2.0], weights=[2, 1]) == pytest.approx(2 / 3)


def test_median_trapezoid():
    traps = [Trapezoid(0.0, 1.0, 2.0, 3.0), Trapezoid(2.0, 3.0, 4.0, 5.0), Trapezoid(4.0, 5.0, 6.0, 7.0)]
    assert median_trapezoid(traps) == Trapezoid(2.0, 3.0, 4.0, 5.0)
    assert median_trapezoid(traps[:2]) == Trapezoid(1.0, 2.0, 3.0, 4.0)
    weighted = Sample.of(traps, counts=[1, 1, 5])
    assert median_trapezoid(weighted) == Trapezoid(4.0, 5.0, 6.0, 7.0)


def test_rank_sample_report_and_run_log():
    clear_logs()
    report = rank_sample(two_interval_example().sample)
    assert report.rank_ms == (1, 1)
    assert report.maximizers["mS"] == (0, 1)
    assert report.median == Trapezoid(2.5, 2.5, 3.5, 3.5)
    logs = get_logs()
    assert logs[0]["operation"] == "rank_sample"
    assert logs[0]["status"] == "success"


def test_rank_queries_uses_query_rows():
    worked = two_interval_example()
    queries = Sample.of(list(worked.queries.values()), labels=list(worked.queries))
    report = rank_queries(worked.sample, queries)
    assert report.labels == ("R_i", "G_i", "R_ii", "G_ii")
    assert report.values("mS")[:2] == pytest.approx((0.625, 0.625), abs=1e-12)
    assert report.ranks("mS")[0] == report.ranks("mS")[1] == 1
    assert report.ranks("FS") == (1, 2, 3, 3)


def test_quadrature_setting_sets_the_grid(monkeypatch):
    oracle = GaussianShiftOracle(as_fuzzy(Trapezoid(1.0, 2.0, 3.0, 4.0)), sigma=1.0)
    query = Trapezoid(0.0, 2.5, 2.7, 6.0)
    monkeypatch.setenv("FUZZYDEPTH_QUADRATURE", "64")
    coarse = population_depths(oracle, query)
    assert coarse == population_depths(oracle, query, quadrature=64)
    monkeypatch.setenv("FUZZYDEPTH_QUADRATURE", "4096")
    fine = population_depths(oracle, query)
    assert fine == population_depths(oracle, query, quadrature=4096)
    assert fine.d_ms != coarse.d_ms
    assert fine.d_ms == pytest.approx(coarse.d_ms, abs=1e-3)


def test_depth_does_not_increase_towards_another_set():
    centre = Trapezoid(1.0, 2.0, 3.0, 4.0)
    rv = DiscreteFuzzyRV.of(
        [add(centre, singleton(-1.0)), centre, add(centre, singleton(1.0))],
        [0.4, 0.2, 0.4],
    )
    rng = np.random.default_rng(53)
    for _ in range(50):
        other = random_trapezoid(rng)
        previous = population_depths(rv, centre).d_ms
        for lam in np.linspace(0.0, 1.0, 11)[1:]:
            current = population_depths(rv, convex_combination(float(lam), centre, other)).d_ms
            assert current <= previous + 1e-12
            previous = current


def test_singleton_samples_reduce_to_simplicial_depth():
    rng = np.random.default_rng(59)
    for _ in range(50):
        values = rng.integers(0, 8, int(rng.integers(2, 20))).astype(float)
        points, counts = np.unique(values, return_counts=True)
        sample = Sample.of([singleton(float(p)) for p in points], counts=counts.tolist())
        for x in (-1.0, 0.0, 2.5, 3.0, 7.0, float(rng.uniform(-1.0, 9.0))):
            depths = empirical_depths(sample, singleton(x))
            reference = univariate_simplicial_depth(x, values.tolist())
            assert depths.d_ns == pytest.approx(reference, abs=1e-12)
            assert depths.d_ms == pytest.approx(reference, abs=1e-12)
            assert depths.d_fs == pytest.approx(reference, abs=1e-12)


def test_empirical_law_population_depths():
    sample = Sample.of([crisp_interval(0.0, 1.0), crisp_interval(2.0, 3.0)], counts=[1, 3])
    rv = DiscreteFuzzyRV.from_sample(sample)
    assert rv.probs == (0.25, 0.75)
    # iid pairs: only the mixed pairs (weight 2 * 1/4 * 3/4) hold I[1, 2]
    assert population_depths(rv, crisp_interval(1.0, 2.0)).d_ns == pytest.approx(0.375, abs=1e-12)
    result = check_empirical_law(seed=3, cases=30)
    assert result.passed, result.detail
