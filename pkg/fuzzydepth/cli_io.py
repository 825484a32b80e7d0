"""CSV ingestion, report persistence and SVG rendering for fuzzy samples."""
from __future__ import annotations

import io
import json
import logging
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable

import matplotlib
import numpy as np
import pandas as pd
from matplotlib.axes import Axes
from matplotlib.colors import to_rgba
from matplotlib.figure import Figure

from fuzzydepth.depth_engine import DepthReport, median_trapezoid
from fuzzydepth.errors import (
    DomainError,
    EmptyDataset,
    IoError,
    NotTrapezoidal,
    OrderingViolation,
    ParseError,
    SampleTooSmall,
)
from fuzzydepth.fuzzy_core import FuzzyNumber, Sample, Trapezoid, as_trapezoid

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("a", "b", "c", "d")
OPTIONAL_COLUMNS = ("count", "label")
REPORT_COLUMNS = (
    "label", "a", "b", "c", "d", "count",
    "d_nS", "d_mS", "d_FS", "rank_nS", "rank_mS", "rank_FS",
)
FUNCTIONALS = ("nS", "mS", "FS")

# fixed salt and no date keep the SVG byte-identical across runs
SVG_RC = {"svg.hashsalt": "fuzzydepth", "svg.fonttype": "none"}
SVG_DPI = 100
GREY = "#b0b0b0"

# Depth ramps, strongest first.
TOP_RAMP = (
    "#d7191c", "#e0401f", "#e86622", "#f08b26", "#f5a82b",
    "#f9c132", "#fbd43a", "#fde244", "#feee50", "#ffff5c",
)
# Lowest depth first.
BOTTOM_RAMP = (
    "#7fffd4", "#7ce8da", "#7ad1df", "#7bbae4", "#7fa3e8",
    "#868cea", "#9076eb", "#9c62ea", "#aa50e7", "#ee82ee",
)


def _read_frame(source: str | Path, *, what: str) -> pd.DataFrame:
    try:
        if str(source) == "-":
            handle: Any = io.StringIO(sys.stdin.read())
        else:
            handle = Path(source)
        return pd.read_csv(handle, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError as exc:
        raise EmptyDataset(f"{what} {source} has no header and no rows") from exc
    except pd.errors.ParserError as exc:
        raise ParseError(f"{what} {source} is not valid CSV: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise ParseError(f"{what} {source} is not UTF-8 text") from exc
    except OSError as exc:
        raise IoError(f"cannot read {what} {source}: {exc}") from exc


def _real(raw: str, column: str, line: int) -> float:
    try:
        value = float(raw)
    except ValueError as exc:
        raise ParseError(f"column {column!r} is not a number: {raw!r}", line=line) from exc
    if not math.isfinite(value):
        raise ParseError(f"column {column!r} must be finite, got {raw!r}", line=line)
    return value


def _count(raw: str, line: int) -> int:
    if raw.strip() == "":
        return 1
    try:
        value = int(raw)
    except ValueError as exc:
        raise ParseError(f"count must be a positive integer, got {raw!r}", line=line) from exc
    if value < 1:
        raise ParseError(f"count must be a positive integer, got {raw!r}", line=line)
    return value


def load_csv(path: str | Path) -> Sample:
    """Read `a,b,c,d[,count][,label]` rows; `-` reads standard input."""
    frame = _read_frame(path, what="dataset")
    frame.columns = [str(col).strip() for col in frame.columns]
    missing = [col for col in REQUIRED_COLUMNS if col not in frame.columns]
    if missing:
        raise ParseError(f"header lacks column(s) {', '.join(missing)}", line=1)
    unknown = [col for col in frame.columns if col not in REQUIRED_COLUMNS + OPTIONAL_COLUMNS]
    if unknown:
        raise ParseError(f"unknown column(s) {', '.join(unknown)}", line=1)
    if frame.empty:
        raise EmptyDataset(f"dataset {path} has a header but no rows")

    items: list[Trapezoid] = []
    counts: list[int] = []
    labels: list[str] = []
    for idx, record in enumerate(frame.to_dict(orient="records")):
        line = idx + 2
        a, b, c, d = (_real(record[col], col, line) for col in REQUIRED_COLUMNS)
        if not a <= b <= c <= d:
            raise OrderingViolation(f"trapezoid needs a <= b <= c <= d, got ({a}, {b}, {c}, {d})", line=line)
        items.append(Trapezoid(a, b, c, d))
        counts.append(_count(record.get("count", ""), line))
        label = str(record.get("label", "")).strip()
        labels.append(label or f"X{idx + 1}")
    sample = Sample.of(items, counts=counts, labels=labels)
    logger.info("loaded %d distinct trapezoids (n=%d) from %s", len(items), sample.n, path)
    return sample


def _open_text(path: str | Path):
    if str(path) == "-":
        return _StdoutWriter()
    try:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        return target.open("w", encoding="utf-8", newline="")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


class _StdoutWriter:
    def __enter__(self):
        return sys.stdout

    def __exit__(self, *exc_info) -> None:
        sys.stdout.flush()


def write_text(path: str | Path, text: str) -> None:
    try:
        with _open_text(path) as handle:
            handle.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def _coords(item: FuzzyNumber) -> tuple[str, str, str, str]:
    try:
        return tuple(repr(float(v)) for v in as_trapezoid(item).as_tuple())  # type: ignore[return-value]
    except NotTrapezoidal:
        return ("", "", "", "")


def write_sample_csv(sample: Sample, path: str | Path) -> None:
    """Write a trapezoidal sample with shortest round-trip coordinates."""
    rows = [
        {
            **dict(zip(REQUIRED_COLUMNS, (repr(float(v)) for v in t.as_tuple()))),
            "count": count,
            "label": label,
        }
        for t, count, label in zip(sample.trapezoids(), sample.counts, sample.labels)
    ]
    frame = pd.DataFrame(rows, columns=[*REQUIRED_COLUMNS, *OPTIONAL_COLUMNS])
    write_text(path, frame.to_csv(index=False, lineterminator="\n"))


def format_depth(value: float) -> str:
    return format(float(value), ".12g")


def _report_rows(report: DepthReport) -> list[dict[str, Any]]:
    rows = []
    for k, item in enumerate(report.items):
        a, b, c, d = _coords(item)
        rows.append(
            {
                "label": report.labels[k],
                "a": a,
                "b": b,
                "c": c,
                "d": d,
                "count": report.counts[k],
                "d_nS": format_depth(report.d_ns[k]),
                "d_mS": format_depth(report.d_ms[k]),
                "d_FS": format_depth(report.d_fs[k]),
                "rank_nS": report.rank_ns[k],
                "rank_mS": report.rank_ms[k],
                "rank_FS": report.rank_fs[k],
            }
        )
    return rows


def render_report(report: DepthReport, format: str = "csv") -> str:
    rows = _report_rows(report)
    if format == "csv":
        frame = pd.DataFrame(rows, columns=list(REPORT_COLUMNS))
        return frame.to_csv(index=False, lineterminator="\n")
    if format == "json":
        records = []
        for row in rows:
            record = dict(row)
            for key in ("a", "b", "c", "d"):
                record[key] = float(record[key]) if record[key] != "" else None
            for key in ("d_nS", "d_mS", "d_FS"):
                record[key] = float(record[key])
            records.append(record)
        median = list(report.median.as_tuple()) if report.median is not None else None
        payload = {"pairs": report.pairs, "median": median, "items": records}
        return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
    raise DomainError(f"unknown report format {format!r}")


def write_report(report: DepthReport, path: str | Path, format: str = "csv") -> None:
    """One record per distinct item in `REPORT_COLUMNS` order; depths at 12 significant digits."""
    write_text(path, render_report(report, format))


def load_report(path: str | Path) -> DepthReport:
    """Read a CSV or JSON report back; JSON is recognised by its `.json` suffix.

    Only JSON reports carry the median and the pair convention.
    """
    if str(path).lower().endswith(".json"):
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise IoError(f"cannot read report {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ParseError(f"report {path} is not valid JSON: {exc.msg}", line=exc.lineno) from exc
        frame = pd.DataFrame(payload.get("items", []), columns=list(REPORT_COLUMNS))
        median_coords = payload.get("median")
        pairs = payload.get("pairs")
    else:
        frame = _read_frame(path, what="report")
        median_coords = None
        pairs = None
    missing = [col for col in REPORT_COLUMNS if col not in frame.columns]
    if missing:
        raise ParseError(f"report lacks column(s) {', '.join(missing)}", line=1)
    if frame.empty:
        raise EmptyDataset(f"report {path} has no rows")

    items: list[FuzzyNumber] = []
    for idx, record in enumerate(frame[list(REPORT_COLUMNS)].to_dict(orient="records")):
        line = idx + 2
        coords = [_real(str(record[col]), col, line) for col in ("a", "b", "c", "d")]
        try:
            items.append(Trapezoid(*coords).to_fuzzy())
        except OrderingViolation as exc:
            raise OrderingViolation(str(exc), line=line) from exc

    def _column(name: str, cast) -> tuple:
        try:
            return tuple(cast(v) for v in frame[name])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"report column {name!r} holds a malformed value") from exc

    ranks = {name: _column(f"rank_{name}", int) for name in FUNCTIONALS}
    return DepthReport(
        items=tuple(items),
        labels=tuple(str(v) for v in frame["label"]),
        counts=_column("count", int),
        d_ns=_column("d_nS", float),
        d_ms=_column("d_mS", float),
        d_fs=_column("d_FS", float),
        rank_ns=ranks["nS"],
        rank_ms=ranks["mS"],
        rank_fs=ranks["FS"],
        median=Trapezoid(*map(float, median_coords)) if median_coords else None,
        maximizers={
            name: tuple(k for k, r in enumerate(ranks[name]) if r == 1) for name in FUNCTIONALS
        },
        pairs=pairs,
    )


@dataclass(frozen=True)
class PlotOptions:
    top_k: int = 5
    bottom_k: int = 0
    highlight_median: bool = False
    functional: str = "mS"
    width: int = 800
    height: int = 420

    def __post_init__(self) -> None:
        if self.top_k < 0 or self.bottom_k < 0:
            raise DomainError("top and bottom counts must be nonnegative")
        if self.functional not in FUNCTIONALS:
            raise DomainError(f"functional must be one of {', '.join(FUNCTIONALS)}, got {self.functional!r}")


def _polygon(item: FuzzyNumber) -> list[tuple[float, float]]:
    try:
        return as_trapezoid(item).membership_polygon()
    except NotTrapezoidal:
        alphas = item.breakpoints
        rising = [(item.level(float(al))[0], float(al)) for al in alphas]
        falling = [(item.level(float(al))[1], float(al)) for al in alphas[::-1]]
        return rising + falling


def _ramp(table: Iterable[str], k: int) -> list[str]:
    colors = list(table)
    if k <= 1:
        return colors[:k]
    picks = np.rint(np.linspace(0, len(colors) - 1, k)).astype(int)
    return [colors[p] for p in picks]


def _check_match(sample: Sample, report: DepthReport) -> None:
    if len(sample.items) != len(report.items):
        raise DomainError(
            f"report has {len(report.items)} items but the sample has {len(sample.items)}"
        )
    if tuple(sample.labels) != tuple(report.labels):
        raise DomainError("report labels do not match the sample labels")


def _draw(ax: Axes, poly: list[tuple[float, float]], *, gid: str, color: str, face: Any, width: float) -> None:
    xs, ys = zip(*poly)
    ax.fill(xs, ys, facecolor=face, edgecolor=color, linewidth=width, joinstyle="round", gid=gid)


def render_svg(sample: Sample, report: DepthReport, options: PlotOptions | None = None) -> str:
    """Membership polygons of every item, top/bottom depth ranks coloured, median optional.

    Items are SVG groups with ids `item-<k>` (uncoloured, 1-based sample
    position), `top-<rank>`, `bottom-<rank>` and `median`.
    """
    options = options or PlotOptions()
    _check_match(sample, report)
    values = np.asarray(report.values(options.functional), dtype=float)
    order = sorted(range(values.size), key=lambda k: (-values[k], k))
    top = order[: min(options.top_k, values.size)]
    remaining = [k for k in order if k not in set(top)]
    bottom_pool = sorted(remaining, key=lambda k: (values[k], k))
    bottom = bottom_pool[: min(options.bottom_k, len(bottom_pool))]

    median = None
    if options.highlight_median:
        median = report.median
        if median is None:
            try:
                median = median_trapezoid(sample)
            except (NotTrapezoidal, SampleTooSmall):
                logger.info("median not drawn: sample is not trapezoidal")

    polygons = [_polygon(item) for item in sample.items]
    coloured = set(top) | set(bottom)
    with matplotlib.rc_context(SVG_RC):
        fig = Figure(figsize=(options.width / SVG_DPI, options.height / SVG_DPI), dpi=SVG_DPI)
        ax = fig.subplots()
        for k, poly in enumerate(polygons):
            if k not in coloured:
                _draw(ax, poly, gid=f"item-{k + 1}", color=GREY, face="none", width=1.0)
        # weakest first so the deepest ends up on top
        ranked_bottom = list(enumerate(zip(bottom, _ramp(BOTTOM_RAMP, len(bottom))), start=1))
        for rank, (k, color) in reversed(ranked_bottom):
            _draw(ax, polygons[k], gid=f"bottom-{rank}", color=color, face=to_rgba(color, 0.15), width=1.2)
        ranked_top = list(enumerate(zip(top, _ramp(TOP_RAMP, len(top))), start=1))
        for rank, (k, color) in reversed(ranked_top):
            _draw(ax, polygons[k], gid=f"top-{rank}", color=color, face=to_rgba(color, 0.2), width=1.2)
        if median is not None:
            xs, ys = zip(*median.membership_polygon())
            ax.plot(xs, ys, color="#000000", linewidth=2.5, gid="median")
        ax.set_ylim(0.0, 1.05)
        ax.margins(x=0.04)
        ax.set_xlabel("x")
        ax.set_ylabel("membership")
        ax.set_title(f"fuzzy sample coloured by D_{options.functional}")
        buffer = io.BytesIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue().decode("utf-8")


def write_svg(sample: Sample, report: DepthReport, path: str | Path, options: PlotOptions | None = None) -> None:
    write_text(path, render_svg(sample, report, options))
