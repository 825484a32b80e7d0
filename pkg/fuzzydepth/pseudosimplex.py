from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from fuzzydepth.errors import DomainError, NonFinite, NotOrdered, WeightError
from fuzzydepth.fuzzy_core import DIRECTIONS, FuzzyLike, FuzzyNumber, as_fuzzy, rr_leq
from fuzzydepth.pl_calculus import contained_everywhere, linear_combination, max_envelope, min_envelope


@dataclass(frozen=True)
class Interval:
    """Compact interval [lo, hi]; s(+1) = hi, s(-1) = -lo."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise NonFinite(f"interval ends must be finite, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise DomainError(f"interval needs lo <= hi, got [{self.lo}, {self.hi}]")

    def support(self, u: int) -> float:
        return self.hi if u == 1 else -self.lo


def sc_contains(generators: Sequence[Interval], candidate: Interval) -> bool:
    """Interval pseudosimplex membership: both endpoints inside the generators' endpoint ranges."""
    if not generators:
        raise DomainError("a pseudosimplex needs at least one generator")
    his = [g.hi for g in generators]
    los = [g.lo for g in generators]
    return min(his) <= candidate.hi <= max(his) and min(los) <= candidate.lo <= max(los)


def sf_contains(generators: Sequence[FuzzyLike], candidate: FuzzyLike) -> bool:
    """Fuzzy pseudosimplex membership, decided exactly on the profiles for every α."""
    if not generators:
        raise DomainError("a pseudosimplex needs at least one generator")
    gens = [as_fuzzy(g) for g in generators]
    cand = as_fuzzy(candidate)
    for u in DIRECTIONS:
        profiles = [g.profile(u) for g in gens]
        if not contained_everywhere(cand.profile(u), min_envelope(profiles), max_envelope(profiles)):
            return False
    return True


def convex_hull_member(generators: Sequence[FuzzyLike], weights: Sequence[float]) -> FuzzyNumber:
    """Σ λ_i·A_i for nonnegative weights summing to one."""
    if not generators or len(generators) != len(weights):
        raise WeightError("need one weight per generator and at least one generator")
    w = np.asarray(weights, dtype=float)
    if not np.all(np.isfinite(w)):
        raise WeightError("weights must be finite")
    if np.any(w < 0.0):
        raise WeightError(f"weights must be nonnegative, got {w.tolist()}")
    if abs(float(w.sum()) - 1.0) > 1e-12:
        raise WeightError(f"weights must sum to 1, got {float(w.sum())!r}")
    gens = [as_fuzzy(g) for g in generators]
    return FuzzyNumber(
        upper=linear_combination(w.tolist(), [g.upper for g in gens]),
        lower_neg=linear_combination(w.tolist(), [g.lower_neg for g in gens]),
    )


def between(A1: FuzzyLike, A: FuzzyLike, A2: FuzzyLike) -> bool:
    """A1 ⪯ A ⪯ A2; for ordered generators this is two-generator pseudosimplex membership."""
    if not rr_leq(A1, A2):
        raise NotOrdered("between() needs the generators ordered as A1 <= A2")
    return rr_leq(A1, A) and rr_leq(A, A2)
