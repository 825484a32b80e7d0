"""Univariate fuzzy numbers stored by their two support-function profiles.

For a fuzzy number A with α-levels [lo(α), hi(α)]:

    upper(α)     = s_A(+1, α) = hi(α)
    lower_neg(α) = s_A(-1, α) = -lo(α)
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence, Union

import numpy as np

from fuzzydepth.errors import DomainError, NonFinite, NotTrapezoidal, OrderingViolation
from fuzzydepth.pl_calculus import (
    TOL,
    PLFunction,
    abs_pl,
    evaluate,
    integrate_power,
    is_nonincreasing,
    linear_combination,
    max_envelope,
    merged_grid,
    subtract,
    sup_abs,
)

Direction = Literal[-1, 1]
DIRECTIONS: tuple[Direction, Direction] = (1, -1)
Metric = Literal["d_r", "d_inf", "rho_r"]


@dataclass(frozen=True)
class FuzzyNumber:
    upper: PLFunction
    lower_neg: PLFunction

    def __post_init__(self) -> None:
        grid = merged_grid((self.upper, self.lower_neg))
        up = self.upper.sample(grid)
        lo = -self.lower_neg.sample(grid)
        scale = TOL * max(1.0, float(np.max(np.abs(up))), float(np.max(np.abs(lo))))
        if np.any(lo - up > scale):
            raise OrderingViolation("empty alpha-level: lower end above upper end")
        if not (is_nonincreasing(self.upper) and is_nonincreasing(self.lower_neg)):
            raise OrderingViolation("alpha-levels are not nested")

    @classmethod
    def from_levels(
        cls, alphas: Sequence[float], lows: Sequence[float], highs: Sequence[float]
    ) -> FuzzyNumber:
        """Build from α-level endpoints; linear interpolation in between."""
        if not (len(alphas) == len(lows) == len(highs)):
            raise DomainError("alphas, lows and highs must have equal length")
        values = np.asarray([*lows, *highs], dtype=float)
        if not np.all(np.isfinite(values)):
            raise NonFinite("alpha-level endpoints must be finite")
        return cls(
            upper=PLFunction(tuple(alphas), tuple(float(h) for h in highs)),
            lower_neg=PLFunction(tuple(alphas), tuple(-float(v) for v in lows)),
        )

    def profile(self, u: Direction) -> PLFunction:
        return self.upper if _direction(u) == 1 else self.lower_neg

    def support(self, u: Direction, alpha: float) -> float:
        return evaluate(self.profile(u), alpha)

    def level(self, alpha: float) -> tuple[float, float]:
        return -evaluate(self.lower_neg, alpha), evaluate(self.upper, alpha)

    @property
    def breakpoints(self) -> np.ndarray:
        return merged_grid((self.upper, self.lower_neg))


@dataclass(frozen=True)
class Trapezoid:
    """Tra(a, b, c, d): rises on [a, b], equals 1 on [b, c], falls on [c, d]."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        coords = (self.a, self.b, self.c, self.d)
        if not all(math.isfinite(v) for v in coords):
            raise NonFinite(f"trapezoid coordinates must be finite, got {coords}")
        if not (self.a <= self.b <= self.c <= self.d):
            raise OrderingViolation(f"trapezoid needs a <= b <= c <= d, got {coords}")

    def to_fuzzy(self) -> FuzzyNumber:
        return FuzzyNumber(
            upper=PLFunction.linear(self.d, self.c),
            lower_neg=PLFunction.linear(-self.a, -self.b),
        )

    def as_tuple(self) -> tuple[float, float, float, float]:
        return self.a, self.b, self.c, self.d

    def membership_polygon(self) -> list[tuple[float, float]]:
        return [(self.a, 0.0), (self.b, 1.0), (self.c, 1.0), (self.d, 0.0)]


FuzzyLike = Union[FuzzyNumber, Trapezoid]


def as_fuzzy(value: FuzzyLike) -> FuzzyNumber:
    if isinstance(value, Trapezoid):
        return value.to_fuzzy()
    if isinstance(value, FuzzyNumber):
        return value
    raise TypeError(f"expected FuzzyNumber or Trapezoid, got {type(value).__name__}")


def as_trapezoid(value: FuzzyLike) -> Trapezoid:
    """Recover Tra(a, b, c, d) when both profiles are affine in α."""
    if isinstance(value, Trapezoid):
        return value
    if not (value.upper.is_affine and value.lower_neg.is_affine):
        raise NotTrapezoidal("fuzzy number has a kinked support profile")
    up0, up1 = value.upper.values
    ln0, ln1 = value.lower_neg.values
    return Trapezoid(-ln0, -ln1, up1, up0)


def make_trapezoid(a: float, b: float, c: float, d: float) -> Trapezoid:
    return Trapezoid(float(a), float(b), float(c), float(d))


def crisp_interval(x: float, y: float) -> Trapezoid:
    """I_[x, y]."""
    return make_trapezoid(x, x, y, y)


def singleton(x: float) -> Trapezoid:
    """I_{x}."""
    return make_trapezoid(x, x, x, x)


@dataclass(frozen=True)
class Sample:
    """Observed fuzzy data: distinct items with multiplicities."""

    items: tuple[FuzzyNumber, ...]
    counts: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.items:
            raise DomainError("a sample needs at least one item")
        if len(self.counts) != len(self.items) or len(self.labels) != len(self.items):
            raise DomainError("items, counts and labels must align")
        if any(int(c) != c or c < 1 for c in self.counts):
            raise DomainError("multiplicities must be positive integers")

    @classmethod
    def of(
        cls,
        items: Iterable[FuzzyLike],
        counts: Iterable[int] | None = None,
        labels: Iterable[str] | None = None,
    ) -> Sample:
        fuzzies = tuple(as_fuzzy(item) for item in items)
        count_tuple = tuple(int(c) for c in counts) if counts is not None else (1,) * len(fuzzies)
        label_tuple = (
            tuple(str(x) for x in labels)
            if labels is not None
            else tuple(f"X{i}" for i in range(1, len(fuzzies) + 1))
        )
        return cls(fuzzies, count_tuple, label_tuple)

    @property
    def n(self) -> int:
        return int(sum(self.counts))

    def expanded(self) -> list[FuzzyNumber]:
        return [item for item, count in zip(self.items, self.counts) for _ in range(count)]

    def trapezoids(self) -> list[Trapezoid]:
        return [as_trapezoid(item) for item in self.items]

    def map(self, fn) -> Sample:
        return Sample(tuple(fn(item) for item in self.items), self.counts, self.labels)


def _direction(u: int) -> Direction:
    if u not in (-1, 1):
        raise DomainError(f"direction must be -1 or +1, got {u!r}")
    return u  # type: ignore[return-value]


def _finite(value: float, name: str) -> float:
    if not math.isfinite(value):
        raise NonFinite(f"{name} must be finite, got {value!r}")
    return float(value)


def support(A: FuzzyLike, u: Direction, alpha: float) -> float:
    """s_A(u, α)."""
    return as_fuzzy(A).support(u, alpha)


def add(A: FuzzyLike, B: FuzzyLike) -> FuzzyNumber:
    A, B = as_fuzzy(A), as_fuzzy(B)
    return FuzzyNumber(
        upper=linear_combination((1.0, 1.0), (A.upper, B.upper)),
        lower_neg=linear_combination((1.0, 1.0), (A.lower_neg, B.lower_neg)),
    )


def scale(gamma: float, A: FuzzyLike) -> FuzzyNumber:
    """γ·A; a negative γ mirrors the number, swapping the two profiles."""
    gamma = _finite(gamma, "gamma")
    A = as_fuzzy(A)
    if gamma == 0.0:
        zero = PLFunction.constant(0.0)
        return FuzzyNumber(upper=zero, lower_neg=zero)
    size = abs(gamma)
    upper, lower_neg = (A.upper, A.lower_neg) if gamma > 0 else (A.lower_neg, A.upper)
    return FuzzyNumber(
        upper=linear_combination((size,), (upper,)),
        lower_neg=linear_combination((size,), (lower_neg,)),
    )


def convex_combination(lam: float, A: FuzzyLike, B: FuzzyLike) -> FuzzyNumber:
    """(1 − λ)·A + λ·B."""
    lam = _finite(lam, "lambda")
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda must lie in [0, 1], got {lam!r}")
    A, B = as_fuzzy(A), as_fuzzy(B)
    if lam == 0.0:
        return A
    if lam == 1.0:
        return B
    weights = (1.0 - lam, lam)
    return FuzzyNumber(
        upper=linear_combination(weights, (A.upper, B.upper)),
        lower_neg=linear_combination(weights, (A.lower_neg, B.lower_neg)),
    )


def hausdorff_profile(A: FuzzyLike, B: FuzzyLike) -> PLFunction:
    """α ↦ d_H(A_α, B_α) for intervals on the line."""
    A, B = as_fuzzy(A), as_fuzzy(B)
    return max_envelope(
        (abs_pl(subtract(A.upper, B.upper)), abs_pl(subtract(A.lower_neg, B.lower_neg)))
    )


def distance(A: FuzzyLike, B: FuzzyLike, metric: Metric = "d_r", r: float = 1.0) -> float:
    """d_r, d_inf or ρ_r between two fuzzy numbers."""
    A, B = as_fuzzy(A), as_fuzzy(B)
    if metric == "d_inf":
        return sup_abs(hausdorff_profile(A, B))
    if r < 1.0:
        raise DomainError(f"r must be >= 1, got {r!r}")
    if metric == "d_r":
        return integrate_power(hausdorff_profile(A, B), r) ** (1.0 / r)
    if metric == "rho_r":
        per_direction = [
            integrate_power(subtract(A.profile(u), B.profile(u)), r) for u in DIRECTIONS
        ]
        return (0.5 * sum(per_direction)) ** (1.0 / r)
    raise DomainError(f"unknown metric {metric!r}")


def rr_leq(A: FuzzyLike, B: FuzzyLike) -> bool:
    """Ramík–Římanek order: inf A_α ≤ inf B_α and sup A_α ≤ sup B_α for every α."""
    A, B = as_fuzzy(A), as_fuzzy(B)
    grid = merged_grid((A.upper, A.lower_neg, B.upper, B.lower_neg))
    up_gap = B.upper.sample(grid) - A.upper.sample(grid)
    low_gap = A.lower_neg.sample(grid) - B.lower_neg.sample(grid)
    tol = TOL * max(
        1.0,
        *(float(np.max(np.abs(f.ys))) for f in (A.upper, A.lower_neg, B.upper, B.lower_neg)),
    )
    return bool(np.all(up_gap >= -tol) and np.all(low_gap >= -tol))
