"""Cross-checks of the depth engine against worked examples, Monte Carlo and naive oracles."""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import numpy as np
import pandas as pd

from fuzzydepth.datasets import two_interval_example, ray_direction, symmetric_pair_rv, trees_chain_sample
from fuzzydepth.depth_engine import (
    DiscreteFuzzyRV,
    containment_probability,
    empirical_depths,
    empirical_depths_many,
    pair_measure,
    population_depths,
    univariate_simplicial_depth,
)
from fuzzydepth.errors import ConfigError
from fuzzydepth.fuzzy_core import DIRECTIONS, FuzzyNumber, Sample, Trapezoid, add, scale
from fuzzydepth.pseudosimplex import between, convex_hull_member, sf_contains
from fuzzydepth.runlog import append_log
from fuzzydepth.stochastics import MIN_TRIALS, mc_containment

logger = logging.getLogger(__name__)

EXACT = 1e-12


@dataclass(frozen=True)
class VerificationResult:
    name: str
    passed: bool
    detail: str


def random_trapezoid(rng: np.random.Generator, spread: float = 5.0) -> Trapezoid:
    a, b, c, d = np.sort(rng.uniform(-spread, spread, 4))
    return Trapezoid(float(a), float(b), float(c), float(d))


def random_sample(rng: np.random.Generator, max_distinct: int = 8, max_count: int = 4) -> Sample:
    k = int(rng.integers(2, max_distinct + 1))
    counts = rng.integers(1, max_count + 1, k)
    return Sample.of([random_trapezoid(rng) for _ in range(k)], counts=counts.tolist())


def random_rv(rng: np.random.Generator, max_atoms: int = 5) -> DiscreteFuzzyRV:
    k = int(rng.integers(2, max_atoms + 1))
    probs = rng.dirichlet(np.ones(k))
    probs = probs / probs.sum()
    return DiscreteFuzzyRV.of([random_trapezoid(rng) for _ in range(k)], probs.tolist())


def naive_depths(sample: Sample, query: FuzzyNumber | Trapezoid) -> tuple[float, float, float]:
    """Double loop over observation pairs i < j with the exact PL routines."""
    observations = sample.expanded()
    cache: dict[tuple[int, int], tuple[bool, float, float]] = {}
    index = [k for k, count in enumerate(sample.counts) for _ in range(count)]
    hits, plus, minus = 0, 0.0, 0.0
    for i, j in combinations(range(len(observations)), 2):
        key = (index[i], index[j])
        if key not in cache:
            Xi, Xj = observations[i], observations[j]
            cache[key] = (
                sf_contains([Xi, Xj], query),
                pair_measure(query, Xi, Xj, 1),
                pair_measure(query, Xi, Xj, -1),
            )
        contained, up, down = cache[key]
        hits += int(contained)
        plus += up
        minus += down
    total = math.comb(len(observations), 2)
    return hits / total, 0.5 * (plus + minus) / total, min(plus, minus) / total


def pair_count_depth(x: float, values: list[float]) -> float:
    """Share of observation pairs whose closed hull holds x, counted one pair at a time."""
    hits = 0
    total = 0
    for v, w in combinations(values, 2):
        total += 1
        hits += int(min(v, w) <= x <= max(v, w))
    return hits / total


def check_two_intervals() -> VerificationResult:
    worked = two_interval_example()
    expected = {
        "R_i": (0.625, 0.5),
        "G_i": (0.625, 0.25),
        "R_ii": (0.125, 0.0),
        "G_ii": (0.25, 0.0),
    }
    worst = 0.0
    for name, (d_ms, d_fs) in expected.items():
        values = empirical_depths(worked.sample, worked.queries[name])
        worst = max(worst, abs(values.d_ms - d_ms), abs(values.d_fs - d_fs))
    return VerificationResult("two-interval example", worst <= EXACT, f"max error {worst:.3g}")


def check_ray_counterexample() -> VerificationResult:
    rv = symmetric_pair_rv()
    centre, direction = ray_direction()
    worst = 0.0
    bound_ok = True
    for n in (1, 10, 1_000, 1_000_000):
        values = population_depths(rv, add(centre, scale(float(n), direction)), pairs="distinct")
        worst = max(
            worst,
            abs(values.d_fs - (0.5 + 0.5 / n)),
            abs(values.d_ms - (0.75 + 0.25 / n)),
        )
        bound_ok &= values.d_fs >= 0.5 and values.d_ms >= 0.5
    return VerificationResult(
        "depth along a ray stays >= 1/2", bound_ok and worst <= EXACT, f"max error {worst:.3g}"
    )


def check_containment_monte_carlo(trials: int, seed: int, cases: int = 50) -> VerificationResult:
    rng = np.random.default_rng(seed)
    inside = 0
    for case in range(cases):
        rv = random_rv(rng)
        query = random_trapezoid(rng, spread=4.0)
        u = DIRECTIONS[int(rng.integers(0, 2))]
        alpha = float(rng.uniform(0.0, 1.0))
        exact = containment_probability(rv, query, u, alpha)
        estimate = mc_containment(rv, query, u, alpha, trials=trials, seed=seed + case + 1)
        band = 3.0 * math.sqrt(exact * (1.0 - exact) / trials)
        inside += int(abs(exact - estimate) <= band + EXACT)
    needed = math.ceil(0.96 * cases)
    return VerificationResult(
        "containment probability vs Monte Carlo",
        inside >= needed,
        f"{inside}/{cases} within 3 sigma (trials={trials})",
    )


def check_ordering(seed: int, cases: int = 200) -> VerificationResult:
    rng = np.random.default_rng(seed + 101)
    violations = 0
    for _ in range(cases):
        sample = random_sample(rng)
        values = empirical_depths(sample, random_trapezoid(rng))
        ordered = values.d_ns <= values.d_fs + EXACT and values.d_fs <= values.d_ms + EXACT
        bounded = all(0.0 <= v <= 1.0 for v in (values.d_ns, values.d_ms, values.d_fs))
        violations += int(not (ordered and bounded))
    return VerificationResult("d_nS <= d_FS <= d_mS", violations == 0, f"{violations} violations in {cases}")


def check_affine_invariance(seed: int, cases: int = 100) -> VerificationResult:
    rng = np.random.default_rng(seed + 202)
    worst = 0.0
    for _ in range(cases):
        sample = random_sample(rng)
        query = random_trapezoid(rng)
        gamma = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.2, 3.0))
        shift = random_trapezoid(rng)

        def moved(item) -> FuzzyNumber:
            return add(scale(gamma, item), shift)

        before = empirical_depths(sample, query)
        after = empirical_depths(sample.map(moved), moved(query))
        worst = max(
            worst,
            abs(before.d_ns - after.d_ns),
            abs(before.d_ms - after.d_ms),
            abs(before.d_fs - after.d_fs),
        )
    return VerificationResult("affine invariance", worst <= 1e-9, f"max change {worst:.3g}")


def check_u_statistic(seed: int, cases: int = 100) -> VerificationResult:
    rng = np.random.default_rng(seed + 303)
    worst = 0.0
    for _ in range(cases):
        sample = random_sample(rng, max_distinct=10, max_count=5)
        query = random_trapezoid(rng)
        fast = empirical_depths(sample, query)
        slow = naive_depths(sample, query)
        worst = max(worst, *(abs(x - y) for x, y in zip((fast.d_ns, fast.d_ms, fast.d_fs), slow)))
    return VerificationResult("U-statistic vs pair loop", worst <= EXACT, f"max error {worst:.3g}")


def check_empirical_law(seed: int, cases: int = 50) -> VerificationResult:
    """Population depths of the empirical law against the loop over all n² ordered pairs."""
    rng = np.random.default_rng(seed + 353)
    worst = 0.0
    for _ in range(cases):
        sample = random_sample(rng, max_distinct=5, max_count=3)
        query = random_trapezoid(rng)
        law = population_depths(DiscreteFuzzyRV.from_sample(sample), query)
        observations = sample.expanded()
        total = {u: 0.0 for u in DIRECTIONS}
        for Xi in observations:
            for Xj in observations:
                for u in DIRECTIONS:
                    total[u] += pair_measure(query, Xi, Xj, u)
        size = len(observations) ** 2
        d_ms = 0.5 * (total[1] + total[-1]) / size
        d_fs = min(total.values()) / size
        worst = max(worst, abs(law.d_ms - d_ms), abs(law.d_fs - d_fs))
    return VerificationResult("empirical law vs V-statistic", worst <= EXACT, f"max error {worst:.3g}")


def check_convex_hull(seed: int, cases: int = 500) -> VerificationResult:
    rng = np.random.default_rng(seed + 404)
    misses = 0
    for _ in range(cases):
        generators = [random_trapezoid(rng) for _ in range(int(rng.integers(2, 5)))]
        weights = rng.dirichlet(np.ones(len(generators)))
        weights = weights / weights.sum()
        misses += int(not sf_contains(generators, convex_hull_member(generators, weights.tolist())))
    return VerificationResult("convex combinations lie in S_F", misses == 0, f"{misses} misses in {cases}")


def ordered_pair(rng: np.random.Generator) -> tuple[Trapezoid, Trapezoid]:
    """A1 ⪯ A2 in the Ramík–Římanek order."""
    low = random_trapezoid(rng)
    shifts = np.sort(rng.uniform(0.0, 2.0, 4))
    return low, Trapezoid(*(float(x + s) for x, s in zip(low.as_tuple(), shifts)))


def check_betweenness(seed: int, cases: int = 500) -> VerificationResult:
    rng = np.random.default_rng(seed + 505)
    mismatches = 0
    for k in range(cases):
        low, high = ordered_pair(rng)
        if k % 2 == 0:
            t = float(rng.uniform(0.0, 1.0))
            candidate = Trapezoid(*(x + t * (y - x) for x, y in zip(low.as_tuple(), high.as_tuple())))
        else:
            candidate = random_trapezoid(rng)
        mismatches += int(between(low, candidate, high) != sf_contains([low, high], candidate))
    return VerificationResult("betweenness equals S_F membership", mismatches == 0, f"{mismatches} mismatches in {cases}")


def check_chain() -> VerificationResult:
    sample = trees_chain_sample()
    depths = empirical_depths_many(sample, sample.items)
    tops = [item.support(1, 1.0) for item in sample.items]
    expanded = [v for v, count in zip(tops, sample.counts) for _ in range(count)]
    worst = 0.0
    for values, top in zip(depths, tops):
        reference = pair_count_depth(top, expanded)
        worst = max(
            worst,
            abs(values.d_ns - values.d_ms),
            abs(values.d_fs - values.d_ms),
            abs(values.d_ms - reference),
            abs(univariate_simplicial_depth(top, tops, sample.counts) - reference),
        )
    return VerificationResult("chain depths coincide", worst <= EXACT, f"max error {worst:.3g} (n={sample.n})")


def run_verification(trials: int = 100_000, seed: int = 1) -> list[VerificationResult]:
    if trials < MIN_TRIALS:
        raise ConfigError(f"--trials must be >= {MIN_TRIALS}, got {trials}")
    started_at = time.perf_counter()
    checks: list[Callable[[], VerificationResult]] = [
        check_two_intervals,
        check_ray_counterexample,
        lambda: check_containment_monte_carlo(trials, seed),
        lambda: check_ordering(seed),
        lambda: check_affine_invariance(seed),
        lambda: check_u_statistic(seed),
        lambda: check_empirical_law(seed),
        lambda: check_convex_hull(seed),
        lambda: check_betweenness(seed),
        check_chain,
    ]
    results = []
    for check in checks:
        result = check()
        logger.debug("%s: %s (%s)", result.name, "pass" if result.passed else "FAIL", result.detail)
        results.append(result)
    failed = [r.name for r in results if not r.passed]
    append_log(
        operation="verify",
        status="success" if not failed else "failed",
        duration_ms=int((time.perf_counter() - started_at) * 1000),
        summary=f"{len(results) - len(failed)}/{len(results)} checks passed (trials={trials} seed={seed})",
        error=", ".join(failed),
    )
    return results


def format_table(results: list[VerificationResult]) -> str:
    frame = pd.DataFrame(
        [{"check": r.name, "result": "PASS" if r.passed else "FAIL", "detail": r.detail} for r in results]
    )
    return frame.to_string(index=False)
