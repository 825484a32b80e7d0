"""Built-in fuzzy datasets used by the verification suite and the CLI examples."""
from __future__ import annotations

from dataclasses import dataclass

from fuzzydepth.depth_engine import DiscreteFuzzyRV
from fuzzydepth.fuzzy_core import FuzzyNumber, Sample, Trapezoid, crisp_interval, singleton
from fuzzydepth.pl_calculus import PLFunction

# Absolute frequencies of the nine distinct trapezoids, chain order.
TREES_FREQUENCIES: tuple[int, ...] = (22, 16, 39, 36, 85, 22, 35, 12, 12)

# Synthetic coordinates: every column strictly increases down the chain, so
# the items are pairwise ordered with strict inequalities in both profiles.
TREES_CHAIN: tuple[tuple[float, float, float, float], ...] = (
    (1.00, 1.20, 1.50, 1.90),
    (1.30, 1.60, 1.80, 2.30),
    (1.60, 2.00, 2.40, 2.80),
    (2.00, 2.40, 2.70, 3.10),
    (2.10, 2.70, 3.00, 3.20),
    (2.50, 3.00, 3.20, 3.50),
    (3.00, 3.40, 3.70, 4.10),
    (3.40, 3.90, 4.20, 4.60),
    (3.90, 4.40, 4.70, 5.00),
)


@dataclass(frozen=True)
class WorkedExample:
    sample: Sample
    queries: dict[str, Trapezoid]


def two_interval_example() -> WorkedExample:
    """Two crisp intervals with four trapezoidal queries (two per scenario)."""
    sample = Sample.of([crisp_interval(1.0, 2.0), crisp_interval(4.0, 5.0)], labels=["I[1,2]", "I[4,5]"])
    return WorkedExample(
        sample=sample,
        queries={
            "R_i": Trapezoid(0.5, 1.5, 1.5, 3.5),
            "G_i": Trapezoid(23.0 / 6.0, 4.5, 4.5, 4.5),
            "R_ii": Trapezoid(0.5, 0.5, 0.5, 2.5),
            "G_ii": Trapezoid(2.0, 6.0, 6.0, 6.0),
        },
    )


def symmetric_pair_rv() -> DiscreteFuzzyRV:
    """X equal to I{1} or I{-1} with probability 1/2 each; F-symmetric about I{0}."""
    return DiscreteFuzzyRV.of([singleton(1.0), singleton(-1.0)], [0.5, 0.5])


def ray_direction() -> tuple[Trapezoid, FuzzyNumber]:
    """Centre A = I{0} and the direction B with B_α = [0, 1 − 2α] for α ≤ 1/2, B_α = {0} above."""
    direction = FuzzyNumber(
        upper=PLFunction((0.0, 0.5, 1.0), (1.0, 0.0, 0.0)),
        lower_neg=PLFunction.constant(0.0),
    )
    return singleton(0.0), direction


def trees_chain_sample() -> Sample:
    """Nine strictly ordered trapezoids with the chain frequencies (n = 279)."""
    return Sample.of(
        [Trapezoid(*coords) for coords in TREES_CHAIN],
        counts=TREES_FREQUENCIES,
        labels=[f"T{k}" for k in range(1, len(TREES_CHAIN) + 1)],
    )
