import numpy as np
import pytest

from fuzzydepth.errors import DomainError, NotOrdered, WeightError
from fuzzydepth.fuzzy_core import Trapezoid, as_trapezoid, crisp_interval, singleton
from fuzzydepth.pseudosimplex import Interval, between, convex_hull_member, sc_contains, sf_contains
from fuzzydepth.verification import check_betweenness, check_convex_hull


def test_interval_pseudosimplex():
    generators = [Interval(0.0, 2.0), Interval(1.0, 5.0)]
    assert sc_contains(generators, Interval(0.5, 3.0))
    assert not sc_contains(generators, Interval(-0.5, 3.0))
    assert not sc_contains(generators, Interval(0.5, 6.0))
    assert Interval(1.0, 4.0).support(-1) == -1.0
    with pytest.raises(DomainError):
        Interval(2.0, 1.0)
    with pytest.raises(DomainError):
        sc_contains([], Interval(0.0, 1.0))


def test_fuzzy_pseudosimplex_membership():
    generators = [Trapezoid(0.0, 1.0, 2.0, 3.0), Trapezoid(2.0, 3.0, 4.0, 5.0)]
    assert sf_contains(generators, Trapezoid(1.0, 2.0, 3.0, 4.0))
    assert sf_contains(generators, generators[0])
    assert not sf_contains(generators, Trapezoid(-1.0, 2.0, 3.0, 4.0))
    # crossing generators: envelopes switch at alpha = 1/2
    crossing = [Trapezoid(0.0, 2.0, 2.0, 4.0), Trapezoid(1.0, 1.0, 3.0, 3.0)]
    assert sf_contains(crossing, Trapezoid(0.5, 1.5, 2.5, 3.5))


def test_convex_hull_member():
    generators = [Trapezoid(0.0, 1.0, 2.0, 3.0), Trapezoid(2.0, 3.0, 4.0, 5.0)]
    mid = convex_hull_member(generators, [0.5, 0.5])
    assert as_trapezoid(mid) == Trapezoid(1.0, 2.0, 3.0, 4.0)
    with pytest.raises(WeightError):
        convex_hull_member(generators, [0.7, 0.7])
    with pytest.raises(WeightError):
        convex_hull_member(generators, [1.5, -0.5])
    with pytest.raises(WeightError):
        convex_hull_member(generators, [1.0])


def test_betweenness():
    low = Trapezoid(0.0, 1.0, 2.0, 3.0)
    high = Trapezoid(1.0, 2.0, 3.0, 4.0)
    assert between(low, Trapezoid(0.5, 1.5, 2.5, 3.5), high)
    assert not between(low, Trapezoid(0.5, 1.5, 2.5, 4.5), high)
    with pytest.raises(NotOrdered):
        between(high, low, low)


def test_convex_combinations_stay_inside():
    result = check_convex_hull(seed=11, cases=500)
    assert result.passed, result.detail


def test_betweenness_matches_membership_for_ordered_pairs():
    result = check_betweenness(seed=11, cases=500)
    assert result.passed, result.detail


def test_two_crisp_intervals_hull():
    generators = [Interval(0.0, 1.0), Interval(3.0, 4.0)]
    assert sc_contains(generators, Interval(2.0, 2.0))
    assert sc_contains(generators, Interval(0.0, 4.0))
    assert not sc_contains(generators, Interval(-1.0, 4.0))
    assert sc_contains([Interval(1.0, 2.0)], Interval(1.0, 2.0))
    assert not sc_contains([Interval(1.0, 2.0)], Interval(1.0, 1.5))

    fuzzy = [crisp_interval(0.0, 1.0), crisp_interval(3.0, 4.0)]
    for lam in (0.0, 0.25, 0.5, 1.0):
        member = as_trapezoid(convex_hull_member(fuzzy, [1.0 - lam, lam]))
        assert member.as_tuple() == pytest.approx((3 * lam, 3 * lam, 1 + 3 * lam, 1 + 3 * lam), abs=1e-12)
    assert as_trapezoid(convex_hull_member(fuzzy, [1.0, 0.0])) == fuzzy[0]


def test_pseudosimplex_is_larger_than_the_convex_hull():
    generators = [crisp_interval(0.0, 1.0), crisp_interval(3.0, 4.0)]
    assert sf_contains(generators, singleton(2.0))
    # every convex combination has width 1, the singleton has width 0
    for lam in np.linspace(0.0, 1.0, 101):
        lo, hi = convex_hull_member(generators, [1.0 - lam, lam]).level(1.0)
        assert hi - lo == pytest.approx(1.0, abs=1e-12)
    assert sf_contains([singleton(0.0), singleton(3.0)], crisp_interval(1.0, 2.0))


def test_singleton_generators_reduce_to_the_real_hull():
    rng = np.random.default_rng(47)
    for _ in range(300):
        points = rng.uniform(-5.0, 5.0, int(rng.integers(2, 5)))
        x = float(rng.uniform(-6.0, 6.0))
        generators = [singleton(float(p)) for p in points]
        assert sf_contains(generators, singleton(x)) == (points.min() <= x <= points.max())
        assert sf_contains(generators, singleton(float(points[0])))


def test_betweenness_of_crisp_sets():
    low, high = crisp_interval(0.0, 1.0), crisp_interval(3.0, 4.0)
    assert between(low, singleton(2.0), high)
    assert not between(low, crisp_interval(-1.0, 0.0), high)
    assert not sf_contains([low, high], crisp_interval(-1.0, 0.0))
    t = Trapezoid(0.0, 1.0, 2.0, 3.0)
    assert between(t, t, t)
