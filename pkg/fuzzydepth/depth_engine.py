"""Naive, modified and simplicial fuzzy depths.

Empirical depths are U-statistics over pairs of sample items; population
depths integrate the containment probability of the query's support value
in the random pair envelope, exactly for finitely supported variables and
by α-quadrature for CDF oracles.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal, Protocol, Sequence, Union, runtime_checkable

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import comb
from scipy.stats import norm, rankdata

from fuzzydepth.config import get_settings
from fuzzydepth.errors import (
    DomainError,
    NotTrapezoidal,
    OracleError,
    QuadratureError,
    SampleTooSmall,
    WeightError,
)
from fuzzydepth.fuzzy_core import (
    DIRECTIONS,
    Direction,
    FuzzyLike,
    FuzzyNumber,
    Sample,
    Trapezoid,
    as_fuzzy,
    as_trapezoid,
)
from fuzzydepth.pl_calculus import (
    TOL,
    band_measures,
    max_envelope,
    measure_between,
    merged_grid,
    min_envelope,
)
from fuzzydepth.runlog import append_log

logger = logging.getLogger(__name__)

PairMode = Literal["strict", "with-diagonal"]
PopulationPairs = Literal["iid", "distinct"]
MIN_QUADRATURE = 64


@dataclass(frozen=True)
class DiscreteFuzzyRV:
    """Finitely supported fuzzy random variable."""

    atoms: tuple[FuzzyNumber, ...]
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.atoms:
            raise WeightError("a discrete fuzzy random variable needs at least one atom")
        if len(self.atoms) != len(self.probs):
            raise WeightError("need one probability per atom")
        p = np.asarray(self.probs, dtype=float)
        if not np.all(np.isfinite(p)) or np.any(p < 0.0):
            raise WeightError("probabilities must be finite and nonnegative")
        if abs(float(p.sum()) - 1.0) > 1e-12:
            raise WeightError(f"probabilities must sum to 1, got {float(p.sum())!r}")

    @classmethod
    def of(cls, atoms: Sequence[FuzzyLike], probs: Sequence[float] | None = None) -> DiscreteFuzzyRV:
        fuzzies = tuple(as_fuzzy(a) for a in atoms)
        if probs is None:
            probs = [1.0 / len(fuzzies)] * len(fuzzies)
        return cls(fuzzies, tuple(float(p) for p in probs))

    @classmethod
    def from_sample(cls, sample: Sample) -> DiscreteFuzzyRV:
        """Empirical distribution: each observation with mass 1/n."""
        n = sample.n
        return cls(sample.items, tuple(c / n for c in sample.counts))


@runtime_checkable
class CdfOracle(Protocol):
    """Distribution of s_X(u, α) through its CDF and atom masses (vectorised over α and t)."""

    def cdf(self, u: Direction, alphas: np.ndarray, ts: np.ndarray) -> np.ndarray: ...

    def atom_mass(self, u: Direction, alphas: np.ndarray, ts: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True)
class GaussianShiftOracle:
    """X = K + Z with a real Z ~ N(0, σ²): s_X(u, α) = s_K(u, α) + u·Z.

    Every support value is continuous and symmetric around s_K, so X is
    F-symmetric with respect to K.
    """

    center: FuzzyNumber
    sigma: float = 1.0

    def __post_init__(self) -> None:
        if not self.sigma > 0.0:
            raise DomainError(f"sigma must be positive, got {self.sigma!r}")

    def cdf(self, u: Direction, alphas: np.ndarray, ts: np.ndarray) -> np.ndarray:
        centre = self.center.profile(u).sample(alphas)
        return norm.cdf((np.asarray(ts, dtype=float) - centre) / self.sigma)

    def atom_mass(self, u: Direction, alphas: np.ndarray, ts: np.ndarray) -> np.ndarray:
        return np.zeros(np.broadcast(np.asarray(alphas), np.asarray(ts)).shape)


@dataclass(frozen=True)
class DiscreteCdfOracle:
    """CDF view of a `DiscreteFuzzyRV`."""

    rv: DiscreteFuzzyRV

    def _values(self, u: Direction, alphas: np.ndarray) -> np.ndarray:
        return np.vstack([atom.profile(u).sample(alphas) for atom in self.rv.atoms])

    def _tol(self, values: np.ndarray, ts: np.ndarray) -> float:
        return TOL * max(1.0, float(np.max(np.abs(values))), float(np.max(np.abs(ts))))

    def cdf(self, u: Direction, alphas: np.ndarray, ts: np.ndarray) -> np.ndarray:
        alphas = np.atleast_1d(np.asarray(alphas, dtype=float))
        ts = np.broadcast_to(np.asarray(ts, dtype=float), alphas.shape)
        values = self._values(u, alphas)
        probs = np.asarray(self.rv.probs)[:, None]
        return (probs * (values <= ts[None, :] + self._tol(values, ts))).sum(axis=0)

    def atom_mass(self, u: Direction, alphas: np.ndarray, ts: np.ndarray) -> np.ndarray:
        alphas = np.atleast_1d(np.asarray(alphas, dtype=float))
        ts = np.broadcast_to(np.asarray(ts, dtype=float), alphas.shape)
        values = self._values(u, alphas)
        probs = np.asarray(self.rv.probs)[:, None]
        return (probs * (np.abs(values - ts[None, :]) <= self._tol(values, ts))).sum(axis=0)


RandomFuzzy = Union[DiscreteFuzzyRV, CdfOracle]


@dataclass(frozen=True)
class DepthValues:
    d_ns: float
    d_ms: float
    d_fs: float


@dataclass(frozen=True)
class DepthReport:
    """Depths of every distinct item, with dense ranks (1 = deepest) and the median."""

    items: tuple[FuzzyNumber, ...]
    labels: tuple[str, ...]
    counts: tuple[int, ...]
    d_ns: tuple[float, ...]
    d_ms: tuple[float, ...]
    d_fs: tuple[float, ...]
    rank_ns: tuple[int, ...]
    rank_ms: tuple[int, ...]
    rank_fs: tuple[int, ...]
    median: Trapezoid | None
    maximizers: dict[str, tuple[int, ...]]
    # None when read back from a CSV report, which does not record it
    pairs: str | None = "strict"

    def values(self, functional: str) -> tuple[float, ...]:
        return {"nS": self.d_ns, "mS": self.d_ms, "FS": self.d_fs}[functional]

    def ranks(self, functional: str) -> tuple[int, ...]:
        return {"nS": self.rank_ns, "mS": self.rank_ms, "FS": self.rank_fs}[functional]


def pair_measure(A: FuzzyLike, Xi: FuzzyLike, Xj: FuzzyLike, u: Direction) -> float:
    """ν{α : s_A(u, α) between s_Xi(u, α) and s_Xj(u, α)}."""
    A, Xi, Xj = as_fuzzy(A), as_fuzzy(Xi), as_fuzzy(Xj)
    pair = (Xi.profile(u), Xj.profile(u))
    return measure_between(A.profile(u), min_envelope(pair), max_envelope(pair))


class _ProfileBank:
    """Distinct atoms' profiles tabulated on their merged breakpoint grid."""

    def __init__(self, atoms: Sequence[FuzzyNumber]):
        self.atoms = list(atoms)
        self.grid = merged_grid([f for atom in self.atoms for f in (atom.upper, atom.lower_neg)])
        self._tables = {u: self._table(u, self.grid) for u in DIRECTIONS}

    def _table(self, u: Direction, grid: np.ndarray) -> np.ndarray:
        return np.vstack([atom.profile(u).sample(grid) for atom in self.atoms])

    def for_query(self, query: FuzzyNumber) -> tuple[np.ndarray, dict[int, np.ndarray]]:
        grid = np.union1d(self.grid, query.breakpoints)
        if grid.size == self.grid.size:
            return self.grid, self._tables
        return grid, {u: self._table(u, grid) for u in DIRECTIONS}


def _pair_index(size: int) -> tuple[np.ndarray, np.ndarray]:
    """Unordered atom pairs i <= j."""
    i, j = np.triu_indices(size)
    return i, j


def _empirical_weights(counts: np.ndarray, pairs: PairMode) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    n = int(counts.sum())
    i, j = _pair_index(counts.size)
    weights = counts[i] * counts[j]
    same = i == j
    if pairs == "strict":
        weights = np.where(same, counts[i] * (counts[i] - 1) / 2, weights)
        normalizer = float(comb(n, 2, exact=True))
    elif pairs == "with-diagonal":
        weights = np.where(same, counts[i] * (counts[i] + 1) / 2, weights)
        normalizer = float(comb(n + 1, 2, exact=True))
    else:
        raise DomainError(f"unknown pair convention {pairs!r}")
    return i, j, weights.astype(float), normalizer


def _weighted_depths(
    bank: _ProfileBank,
    query: FuzzyNumber,
    i: np.ndarray,
    j: np.ndarray,
    weights: np.ndarray,
    normalizer: float,
) -> DepthValues:
    grid, tables = bank.for_query(query)
    live = weights > 0.0
    i, j, weights = i[live], j[live], weights[live]
    per_direction: dict[int, float] = {}
    contained_all = np.ones(i.size, dtype=bool)
    for u in DIRECTIONS:
        table = tables[u]
        g = query.profile(u).sample(grid)
        measures, contained = band_measures(grid, g, table[i], table[j])
        per_direction[u] = float(np.dot(weights, measures)) / normalizer
        contained_all &= contained
    d_ns = float(np.dot(weights, contained_all)) / normalizer
    d_ms = 0.5 * (per_direction[1] + per_direction[-1])
    d_fs = min(per_direction[1], per_direction[-1])
    return DepthValues(d_ns=_unit(d_ns), d_ms=_unit(d_ms), d_fs=_unit(d_fs))


def _unit(value: float) -> float:
    return float(min(1.0, max(0.0, value)))


def empirical_depths(sample: Sample, query: FuzzyLike, pairs: PairMode = "strict") -> DepthValues:
    """Sample versions of D_nS, D_mS and D_FS of `query`."""
    if sample.n < 2:
        raise SampleTooSmall(f"depth needs at least 2 observations, got {sample.n}")
    bank = _ProfileBank(sample.items)
    i, j, weights, normalizer = _empirical_weights(np.asarray(sample.counts, dtype=np.int64), pairs)
    return _weighted_depths(bank, as_fuzzy(query), i, j, weights, normalizer)


def empirical_depths_many(
    sample: Sample,
    queries: Sequence[FuzzyLike],
    pairs: PairMode = "strict",
    workers: int = 1,
) -> list[DepthValues]:
    """Depths of several queries; results are in query order for any worker count."""
    if sample.n < 2:
        raise SampleTooSmall(f"depth needs at least 2 observations, got {sample.n}")
    bank = _ProfileBank(sample.items)
    i, j, weights, normalizer = _empirical_weights(np.asarray(sample.counts, dtype=np.int64), pairs)
    fuzzies = [as_fuzzy(q) for q in queries]

    def _one(query: FuzzyNumber) -> DepthValues:
        return _weighted_depths(bank, query, i, j, weights, normalizer)

    if workers <= 1 or len(fuzzies) < 2:
        return [_one(q) for q in fuzzies]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_one, fuzzies))


def containment_probability(rv: RandomFuzzy, query: FuzzyLike, u: Direction, alpha: float) -> float:
    """P(s_Q(u, α) ∈ [min, max] of two iid support values)."""
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    oracle = DiscreteCdfOracle(rv) if isinstance(rv, DiscreteFuzzyRV) else rv
    t = as_fuzzy(query).support(u, alpha)
    values = _containment(oracle, u, np.asarray([alpha]), np.asarray([t]))
    return float(values[0])


def _containment(oracle: CdfOracle, u: Direction, alphas: np.ndarray, ts: np.ndarray) -> np.ndarray:
    F = np.asarray(oracle.cdf(u, alphas, ts), dtype=float)
    mass = np.asarray(oracle.atom_mass(u, alphas, ts), dtype=float)
    eps = 1e-12
    if np.any((F < -eps) | (F > 1.0 + eps)):
        raise OracleError("oracle CDF value outside [0, 1]")
    if np.any((mass < -eps) | (mass > F + eps)):
        raise OracleError("oracle atom mass must lie in [0, F(t)]")
    F = np.clip(F, 0.0, 1.0)
    below = np.clip(F - mass, 0.0, 1.0)
    return np.clip(1.0 - (1.0 - F) ** 2 - below**2, 0.0, 1.0)


@dataclass(frozen=True)
class PopulationDepths:
    d_ms: float
    d_fs: float
    d_ns: float | None = None


def population_depths(
    rv: RandomFuzzy,
    query: FuzzyLike,
    quadrature: int | None = None,
    pairs: PopulationPairs = "iid",
) -> PopulationDepths:
    """Population D_mS and D_FS (and D_nS for discrete variables).

    Discrete variables are integrated exactly over ordered atom pairs:
    `iid` weights p_i·p_j including same-atom pairs, `distinct` renormalises
    over pairs of different atoms. Oracles use a uniform α grid of
    `quadrature` nodes, FUZZYDEPTH_QUADRATURE by default.
    """
    query = as_fuzzy(query)
    if isinstance(rv, DiscreteFuzzyRV):
        return _discrete_population(rv, query, pairs)
    if not isinstance(rv, CdfOracle):
        raise OracleError(f"unsupported random variable {type(rv).__name__}")
    size = get_settings().quadrature if quadrature is None else int(quadrature)
    if size < MIN_QUADRATURE:
        raise QuadratureError(f"quadrature grid needs at least {MIN_QUADRATURE} nodes, got {size}")
    alphas = np.union1d(np.linspace(0.0, 1.0, size), query.breakpoints)
    per_direction = {}
    for u in DIRECTIONS:
        ts = query.profile(u).sample(alphas)
        per_direction[u] = float(trapezoid(_containment(rv, u, alphas, ts), alphas))
    return PopulationDepths(
        d_ms=_unit(0.5 * (per_direction[1] + per_direction[-1])),
        d_fs=_unit(min(per_direction.values())),
    )


def _discrete_population(rv: DiscreteFuzzyRV, query: FuzzyNumber, pairs: PopulationPairs) -> PopulationDepths:
    p = np.asarray(rv.probs, dtype=float)
    i, j = _pair_index(p.size)
    same = i == j
    weights = np.where(same, p[i] ** 2, 2.0 * p[i] * p[j])
    if pairs == "distinct":
        off_diagonal = float(weights[~same].sum())
        if off_diagonal > 0.0:
            weights = np.where(same, 0.0, weights / off_diagonal)
    elif pairs != "iid":
        raise DomainError(f"unknown population pair convention {pairs!r}")
    values = _weighted_depths(_ProfileBank(rv.atoms), query, i, j, weights, 1.0)
    return PopulationDepths(d_ms=values.d_ms, d_fs=values.d_fs, d_ns=values.d_ns)


def univariate_simplicial_depth(x: float, values: Sequence[float], weights: Sequence[int] | None = None) -> float:
    """Empirical simplicial depth of x among reals: share of pairs whose closed hull holds x."""
    v = np.asarray(values, dtype=float)
    w = np.ones(v.size, dtype=np.int64) if weights is None else np.asarray(weights, dtype=np.int64)
    n = int(w.sum())
    if n < 2:
        raise SampleTooSmall("simplicial depth needs at least 2 observations")
    below = int(w[v < x].sum())
    above = int(w[v > x].sum())
    missed = comb(below, 2, exact=True) + comb(above, 2, exact=True)
    return 1.0 - missed / comb(n, 2, exact=True)


def in_family_b(B: FuzzyLike) -> bool:
    """Both support profiles vanish only on a ν-null set of α."""
    B = as_fuzzy(B)
    for u in DIRECTIONS:
        ys = B.profile(u).ys
        zero = np.abs(ys) <= TOL * max(1.0, float(np.max(np.abs(ys))))
        # a PL profile is zero on a cell iff both cell ends are zero
        if np.any(zero[:-1] & zero[1:]):
            return False
    return True


def median_trapezoid(sample: Sample | Sequence[Trapezoid]) -> Trapezoid:
    """Coordinate-wise median Tra(Med a, Med b, Med c, Med d); even n takes midpoints."""
    if isinstance(sample, Sample):
        traps = sample.trapezoids()
        counts = np.asarray(sample.counts, dtype=np.int64)
    else:
        traps = [as_trapezoid(t) for t in sample]
        counts = np.ones(len(traps), dtype=np.int64)
    if not traps:
        raise SampleTooSmall("median of an empty sample")
    coords = np.repeat(np.asarray([t.as_tuple() for t in traps], dtype=float), counts, axis=0)
    a, b, c, d = (float(x) for x in np.median(coords, axis=0))
    return Trapezoid(a, b, c, d)


def _dense_ranks(values: Sequence[float]) -> tuple[int, ...]:
    # ties at the printed precision share a rank
    rounded = np.round(np.asarray(values, dtype=float), 12)
    return tuple(int(r) for r in rankdata(-rounded, method="dense"))


def rank_sample(sample: Sample, pairs: PairMode = "strict", workers: int = 1) -> DepthReport:
    """Depth of every distinct item against the full sample, with ranks and the median."""
    started_at = time.perf_counter()
    try:
        depths = empirical_depths_many(sample, sample.items, pairs=pairs, workers=workers)
    except Exception as exc:
        append_log(
            operation="rank_sample",
            status="error",
            duration_ms=int((time.perf_counter() - started_at) * 1000),
            summary="depth computation failed",
            error=str(exc),
        )
        raise
    report = _build_report(
        items=sample.items,
        labels=sample.labels,
        counts=sample.counts,
        depths=depths,
        median=_median_or_none(sample),
        pairs=pairs,
    )
    append_log(
        operation="rank_sample",
        status="success",
        duration_ms=int((time.perf_counter() - started_at) * 1000),
        summary=f"n={sample.n} distinct={len(sample.items)} pairs={pairs} deepest(mS)={report.maximizers['mS']}",
    )
    return report


def rank_queries(
    sample: Sample, queries: Sample, pairs: PairMode = "strict", workers: int = 1
) -> DepthReport:
    """Depths of separate query items against `sample`; the median is the sample's."""
    depths = empirical_depths_many(sample, queries.items, pairs=pairs, workers=workers)
    return _build_report(
        items=queries.items,
        labels=queries.labels,
        counts=queries.counts,
        depths=depths,
        median=_median_or_none(sample),
        pairs=pairs,
    )


def _median_or_none(sample: Sample) -> Trapezoid | None:
    try:
        return median_trapezoid(sample)
    except NotTrapezoidal:
        logger.info("sample has non-trapezoidal items; median fuzzy set skipped")
        return None


def _build_report(
    *,
    items: tuple[FuzzyNumber, ...],
    labels: tuple[str, ...],
    counts: tuple[int, ...],
    depths: list[DepthValues],
    median: Trapezoid | None,
    pairs: str,
) -> DepthReport:
    d_ns = tuple(d.d_ns for d in depths)
    d_ms = tuple(d.d_ms for d in depths)
    d_fs = tuple(d.d_fs for d in depths)
    rank_ns, rank_ms, rank_fs = _dense_ranks(d_ns), _dense_ranks(d_ms), _dense_ranks(d_fs)
    maximizers = {
        name: tuple(idx for idx, r in enumerate(ranks) if r == 1)
        for name, ranks in (("nS", rank_ns), ("mS", rank_ms), ("FS", rank_fs))
    }
    return DepthReport(
        items=items,
        labels=labels,
        counts=counts,
        d_ns=d_ns,
        d_ms=d_ms,
        d_fs=d_fs,
        rank_ns=rank_ns,
        rank_ms=rank_ms,
        rank_fs=rank_fs,
        median=median,
        maximizers=maximizers,
        pairs=pairs,
    )
