"""Seeded generation of trapezoidal fuzzy samples and Monte Carlo checks.

All randomness comes from numpy's PCG64 bit generator. Normal deviates are
produced by the Box–Muller transform on PCG64 uniforms (not by numpy's
ziggurat), so a seed yields the same sample on every platform.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from fuzzydepth.errors import ConfigError
from fuzzydepth.fuzzy_core import DIRECTIONS, Direction, FuzzyLike, Sample, Trapezoid, as_fuzzy
from fuzzydepth.depth_engine import DiscreteFuzzyRV
from fuzzydepth.pl_calculus import TOL, merged_grid
from fuzzydepth.runlog import append_log

logger = logging.getLogger(__name__)

MIN_TRIALS = 1000


@dataclass(frozen=True)
class SimConfig:
    n: int
    seed: int
    sigma: float = 10.0
    dof: int = 1

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 2:
            raise ConfigError(f"n must be an integer >= 2, got {self.n!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not self.sigma > 0.0:
            raise ConfigError(f"sigma must be positive, got {self.sigma!r}")
        if int(self.dof) != self.dof or self.dof < 1:
            raise ConfigError(f"dof must be a positive integer, got {self.dof!r}")


class PortableRng:
    """PCG64 stream with platform-independent normal and chi-squared deviates."""

    def __init__(self, seed: int):
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def uniform(self, size: int | tuple[int, ...]) -> np.ndarray:
        return self._gen.random(size)

    def normal(self, size: int) -> np.ndarray:
        u1 = 1.0 - self.uniform(size)  # (0, 1]
        u2 = self.uniform(size)
        return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)

    def chisquare(self, dof: int, size: int) -> np.ndarray:
        total = np.zeros(size)
        for _ in range(dof):
            total += self.normal(size) ** 2
        return total

    def choice(self, size: tuple[int, ...], p: Sequence[float]) -> np.ndarray:
        """Indices drawn with probabilities `p` by inversion of their cumulative sums."""
        cumulative = np.cumsum(np.asarray(p, dtype=float))
        cumulative[-1] = 1.0
        return np.searchsorted(cumulative, self.uniform(size), side="right")


def simulate_trapezoids(cfg: SimConfig) -> Sample:
    """Draw Tra(X1 − X2 − X3, X1 − X2, X1 + X2, X1 + X2 + X4) n times.

    X1 ~ N(0, σ²) and X2, X3, X4 ~ χ²(dof), all independent.
    """
    started_at = time.perf_counter()
    rng = PortableRng(cfg.seed)
    x1 = cfg.sigma * rng.normal(cfg.n)
    x2 = rng.chisquare(cfg.dof, cfg.n)
    x3 = rng.chisquare(cfg.dof, cfg.n)
    x4 = rng.chisquare(cfg.dof, cfg.n)
    items = []
    for k in range(cfg.n):
        b = x1[k] - x2[k]
        c = x1[k] + x2[k]
        items.append(Trapezoid(float(b - x3[k]), float(b), float(c), float(c + x4[k])))
    sample = Sample.of(items, labels=[f"sim{k}" for k in range(1, cfg.n + 1)])
    append_log(
        operation="simulate",
        status="success",
        duration_ms=int((time.perf_counter() - started_at) * 1000),
        summary=f"n={cfg.n} seed={cfg.seed} sigma={cfg.sigma} dof={cfg.dof}",
    )
    return sample


def _clusters(values: np.ndarray, masses: np.ndarray, tol: float) -> list[tuple[float, float]]:
    order = np.argsort(values, kind="stable")
    merged: list[tuple[float, float]] = []
    for v, m in zip(values[order], masses[order]):
        if m == 0.0:
            continue
        if merged and abs(v - merged[-1][0]) <= tol:
            merged[-1] = (merged[-1][0], merged[-1][1] + m)
        else:
            merged.append((float(v), float(m)))
    return merged


def f_symmetric(rv: DiscreteFuzzyRV, center: FuzzyLike, alpha_grid: Sequence[float] | None = None) -> bool:
    """Whether s_A − s_X and s_X − s_A share a distribution at every checked (u, α)."""
    center = as_fuzzy(center)
    if alpha_grid is None:
        profiles = [f for atom in (*rv.atoms, center) for f in (atom.upper, atom.lower_neg)]
        alphas = np.union1d(merged_grid(profiles), [0.0, 0.5, 1.0])
    else:
        alphas = np.asarray(alpha_grid, dtype=float)
    masses = np.asarray(rv.probs, dtype=float)
    for u in DIRECTIONS:
        c = center.profile(u).sample(alphas)
        table = np.vstack([atom.profile(u).sample(alphas) for atom in rv.atoms])
        tol = TOL * max(1.0, float(np.max(np.abs(table))), float(np.max(np.abs(c))))
        for k in range(alphas.size):
            diffs = c[k] - table[:, k]
            left = _clusters(diffs, masses, tol)
            right = _clusters(-diffs, masses, tol)
            if len(left) != len(right):
                return False
            for (v1, m1), (v2, m2) in zip(left, right):
                if abs(v1 - v2) > tol or abs(m1 - m2) > 1e-12:
                    return False
    return True


def mc_containment(
    rv: DiscreteFuzzyRV,
    query: FuzzyLike,
    u: Direction,
    alpha: float,
    trials: int,
    seed: int,
) -> float:
    """Share of iid pairs whose support values enclose the query's s(u, α)."""
    if trials < MIN_TRIALS:
        raise ConfigError(f"trials must be >= {MIN_TRIALS}, got {trials}")
    rng = PortableRng(seed)
    picks = rng.choice((trials, 2), rv.probs)
    values = np.asarray([atom.support(u, alpha) for atom in rv.atoms])
    t = as_fuzzy(query).support(u, alpha)
    tol = TOL * max(1.0, float(np.max(np.abs(values))), abs(t))
    first, second = values[picks[:, 0]], values[picks[:, 1]]
    hit = (np.minimum(first, second) <= t + tol) & (t - tol <= np.maximum(first, second))
    return float(hit.mean())
