"""Exact calculus on continuous piecewise-linear functions of α ∈ [0, 1].

Every support profile, envelope and depth integrand in the package is a
`PLFunction`. Crossings are solved analytically per segment, so measures of
sub-level and band sets are exact up to floating point rounding.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from fuzzydepth.errors import DomainError, EnvelopeInverted, NonFinite

TOL = 1e-12
# crossings closer than this to an existing breakpoint are not inserted
_MIN_GAP = 1e-14


@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-linear interpolation of `values` at `breakpoints`.

    Breakpoints start at 0, end at 1 and are strictly increasing. Instances
    are canonical: interior breakpoints joining collinear segments are
    dropped, so two equal functions compare equal structurally.
    """

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        xs = np.asarray(self.breakpoints, dtype=float)
        ys = np.asarray(self.values, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
            raise DomainError("breakpoints and values must be 1-d sequences of equal length >= 2")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise NonFinite("piecewise-linear function with non-finite breakpoint or value")
        if xs[0] != 0.0 or xs[-1] != 1.0:
            raise DomainError("breakpoints must start at 0 and end at 1")
        if np.any(np.diff(xs) <= 0.0):
            raise DomainError("breakpoints must be strictly increasing")
        xs, ys = _merge_collinear(xs, ys)
        object.__setattr__(self, "breakpoints", tuple(float(x) for x in xs))
        object.__setattr__(self, "values", tuple(float(y) for y in ys))

    @classmethod
    def constant(cls, value: float) -> PLFunction:
        return cls((0.0, 1.0), (float(value), float(value)))

    @classmethod
    def linear(cls, at_zero: float, at_one: float) -> PLFunction:
        return cls((0.0, 1.0), (float(at_zero), float(at_one)))

    @property
    def xs(self) -> np.ndarray:
        return np.asarray(self.breakpoints, dtype=float)

    @property
    def ys(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    @property
    def is_affine(self) -> bool:
        return len(self.breakpoints) == 2

    def __call__(self, alpha: float) -> float:
        return evaluate(self, alpha)

    def sample(self, alphas: Iterable[float] | np.ndarray) -> np.ndarray:
        """Vectorised evaluation without the domain check (callers own the grid)."""
        return np.interp(np.asarray(alphas, dtype=float), self.xs, self.ys)

    def __neg__(self) -> PLFunction:
        return PLFunction(self.breakpoints, tuple(-y for y in self.values))


def _merge_collinear(xs: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if xs.size <= 2:
        return xs, ys
    keep_x = [xs[0]]
    keep_y = [ys[0]]
    for i in range(1, xs.size - 1):
        left = (ys[i] - keep_y[-1]) / (xs[i] - keep_x[-1])
        right = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])
        if abs(left - right) <= TOL * max(1.0, abs(left), abs(right)):
            continue
        keep_x.append(xs[i])
        keep_y.append(ys[i])
    keep_x.append(xs[-1])
    keep_y.append(ys[-1])
    return np.asarray(keep_x), np.asarray(keep_y)


def evaluate(f: PLFunction, alpha: float) -> float:
    """Linear interpolation of f at α; exact at breakpoints."""
    if not (0.0 <= alpha <= 1.0):
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    return float(np.interp(alpha, f.xs, f.ys))


def merged_grid(fs: Iterable[PLFunction]) -> np.ndarray:
    """Sorted union of the breakpoints of all functions."""
    return np.unique(np.concatenate([f.xs for f in fs]))


def linear_combination(coefficients: Sequence[float], fs: Sequence[PLFunction]) -> PLFunction:
    if len(coefficients) != len(fs) or not fs:
        raise DomainError("need one coefficient per function and at least one function")
    grid = merged_grid(fs)
    total = np.zeros_like(grid)
    for coefficient, f in zip(coefficients, fs):
        total = total + float(coefficient) * f.sample(grid)
    return PLFunction(tuple(grid), tuple(total))


def subtract(f: PLFunction, g: PLFunction) -> PLFunction:
    return linear_combination((1.0, -1.0), (f, g))


def _crossings(grid: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Interior points where any two rows (linear on each grid cell) cross."""
    points: list[float] = []
    x0, x1 = grid[:-1], grid[1:]
    for p in range(rows.shape[0]):
        for q in range(p + 1, rows.shape[0]):
            diff = rows[p] - rows[q]
            d0, d1 = diff[:-1], diff[1:]
            mask = d0 * d1 < 0.0
            if np.any(mask):
                t = x0[mask] + (x1[mask] - x0[mask]) * d0[mask] / (d0[mask] - d1[mask])
                points.extend(t.tolist())
    return np.asarray(points, dtype=float)


def _refine(grid: np.ndarray, extra: np.ndarray) -> np.ndarray:
    if extra.size == 0:
        return grid
    extra = extra[(extra > 0.0) & (extra < 1.0)]
    if extra.size == 0:
        return grid
    idx = np.searchsorted(grid, extra)
    left = grid[np.clip(idx - 1, 0, grid.size - 1)]
    right = grid[np.clip(idx, 0, grid.size - 1)]
    far = (np.abs(extra - left) > _MIN_GAP) & (np.abs(right - extra) > _MIN_GAP)
    return np.unique(np.concatenate([grid, extra[far]]))


def _envelope(fs: Sequence[PLFunction], reducer) -> PLFunction:
    if not fs:
        raise DomainError("envelope of an empty list")
    if len(fs) == 1:
        return fs[0]
    grid = merged_grid(fs)
    rows = np.vstack([f.sample(grid) for f in fs])
    grid = _refine(grid, _crossings(grid, rows))
    rows = np.vstack([f.sample(grid) for f in fs])
    return PLFunction(tuple(grid), tuple(reducer(rows, axis=0)))


def min_envelope(fs: Sequence[PLFunction]) -> PLFunction:
    """Pointwise minimum, with every pairwise crossing as a breakpoint."""
    return _envelope(fs, np.min)


def max_envelope(fs: Sequence[PLFunction]) -> PLFunction:
    """Pointwise maximum, with every pairwise crossing as a breakpoint."""
    return _envelope(fs, np.max)


def abs_pl(f: PLFunction) -> PLFunction:
    grid = f.xs
    grid = _refine(grid, _crossings(grid, np.vstack([f.ys, np.zeros_like(f.ys)])))
    return PLFunction(tuple(grid), tuple(np.abs(f.sample(grid))))


def sup_abs(f: PLFunction) -> float:
    return float(np.max(np.abs(f.ys)))


def integrate_power(f: PLFunction, r: float) -> float:
    """∫_0^1 |f(α)|^r dα, closed form on every linear piece."""
    if r < 1.0:
        raise DomainError(f"exponent must be >= 1, got {r!r}")
    g = abs_pl(f)
    xs, ys = g.xs, g.ys
    total = 0.0
    for x0, x1, a, b in zip(xs[:-1], xs[1:], ys[:-1], ys[1:]):
        width = x1 - x0
        if abs(b - a) <= TOL * max(1.0, a, b):
            total += width * (0.5 * (a + b)) ** r
        else:
            total += width * (b ** (r + 1.0) - a ** (r + 1.0)) / ((r + 1.0) * (b - a))
    return total


def is_nonincreasing(f: PLFunction) -> bool:
    ys = f.ys
    return bool(np.all(np.diff(ys) <= TOL * max(1.0, float(np.max(np.abs(ys))))))


def _scale(*arrays: np.ndarray) -> float:
    return TOL * max([1.0] + [float(np.max(np.abs(a))) for a in arrays])


def _check_envelope(grid: np.ndarray, lo_vals: np.ndarray, hi_vals: np.ndarray, tol: float) -> None:
    if np.any(lo_vals - hi_vals > tol):
        worst = int(np.argmax(lo_vals - hi_vals))
        raise EnvelopeInverted(
            f"lower envelope exceeds upper envelope at alpha={grid[worst]:.12g} "
            f"({lo_vals[worst]:.12g} > {hi_vals[worst]:.12g})"
        )


def measure_between(g: PLFunction, lo: PLFunction, hi: PLFunction) -> float:
    """ν{α ∈ [0, 1] : lo(α) ≤ g(α) ≤ hi(α)}, closed at the boundaries."""
    grid = merged_grid((g, lo, hi))
    gv, lv, hv = g.sample(grid), lo.sample(grid), hi.sample(grid)
    tol = _scale(gv, lv, hv)
    _check_envelope(grid, lv, hv, tol)

    above = gv - lv
    below = hv - gv
    if np.all(above >= -tol) and np.all(below >= -tol):
        return 1.0

    x0, x1 = grid[:-1], grid[1:]
    l1, r1 = _nonnegative_part(x0, x1, above[:-1], above[1:], tol)
    l2, r2 = _nonnegative_part(x0, x1, below[:-1], below[1:], tol)
    lengths = np.clip(np.minimum(r1, r2) - np.maximum(l1, l2), 0.0, None)
    return float(min(1.0, lengths.sum()))


def _nonnegative_part(
    x0: np.ndarray, x1: np.ndarray, e0: np.ndarray, e1: np.ndarray, tol: float
) -> tuple[np.ndarray, np.ndarray]:
    """Per cell, the interval where the linear function through (x0,e0),(x1,e1) is >= 0."""
    pos0 = e0 >= -tol
    pos1 = e1 >= -tol
    with np.errstate(divide="ignore", invalid="ignore"):
        cross = x0 + (x1 - x0) * e0 / (e0 - e1)
    cross = np.clip(np.nan_to_num(cross, nan=0.0), x0, x1)
    left = np.where(pos0, x0, np.where(pos1, cross, x1))
    right = np.where(pos1, x1, np.where(pos0, cross, x0))
    return left, right


def contained_everywhere(g: PLFunction, lo: PLFunction, hi: PLFunction) -> bool:
    """True iff lo ≤ g ≤ hi on all of [0, 1]."""
    grid = merged_grid((g, lo, hi))
    gv, lv, hv = g.sample(grid), lo.sample(grid), hi.sample(grid)
    tol = _scale(gv, lv, hv)
    _check_envelope(grid, lv, hv, tol)
    # all three are linear between merged breakpoints
    return bool(np.all(gv - lv >= -tol) and np.all(hv - gv >= -tol))


def band_measures(
    grid: np.ndarray, g: np.ndarray, a: np.ndarray, b: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Batched pair-band containment on a shared grid.

    `g` holds the query values on `grid`, `a` and `b` (shape pairs x grid)
    the two band members. All rows must be linear on each grid cell. Returns,
    per pair, ν{α : g ∈ [min(a, b), max(a, b)]} and whether that holds for
    every α.
    """
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    tol = _scale(g, a, b)
    h1 = g[None, :] - a
    h2 = g[None, :] - b
    widths = np.diff(grid)

    t1 = _unit_root(h1[:, :-1], h1[:, 1:])
    t2 = _unit_root(h2[:, :-1], h2[:, 1:])
    zeros = np.zeros_like(t1)
    cuts = np.stack([zeros, np.minimum(t1, t2), np.maximum(t1, t2), zeros + 1.0], axis=-1)
    pieces = np.diff(cuts, axis=-1)
    mids = 0.5 * (cuts[..., :-1] + cuts[..., 1:])

    m1 = h1[:, :-1, None] + (h1[:, 1:, None] - h1[:, :-1, None]) * mids
    m2 = h2[:, :-1, None] + (h2[:, 1:, None] - h2[:, :-1, None]) * mids
    inside = ((m1 <= tol) & (m2 >= -tol)) | ((m1 >= -tol) & (m2 <= tol)) | (pieces == 0.0)

    cell_full = inside.all(axis=-1)
    partial = (pieces * inside).sum(axis=-1) * widths[None, :]
    per_cell = np.where(cell_full, widths[None, :], partial)
    contained = cell_full.all(axis=-1)
    measures = np.where(contained, 1.0, np.minimum(per_cell.sum(axis=-1), 1.0))
    return measures, contained


def _unit_root(e0: np.ndarray, e1: np.ndarray) -> np.ndarray:
    """Root in (0, 1) of the segment from e0 to e1, or 0 when it has none."""
    with np.errstate(divide="ignore", invalid="ignore"):
        t = e0 / (e0 - e1)
    return np.where((e0 * e1 < 0.0) & np.isfinite(t), np.clip(t, 0.0, 1.0), 0.0)
