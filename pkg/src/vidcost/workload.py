"""Synthetic video catalogs and hourly view traces.

A workload is a catalog of videos plus, for each video, two consecutive
periods of hourly view counts: the current period the operator can observe
and the next period the operator is charged for. Hot ("frequently
accessed") videos start from a high base rate and drift along a per-video
linear trend; the remaining cold videos hold a steady low rate. Base rates
are Zipf-skewed by rank inside each class, so both classes have genuinely
popular heads and long tails.

Reproducibility: every random quantity comes from a named generator,
numpy's PCG64, seeded through SeedSequence with the tuple
(seed, stream_tag, video_index). Each video therefore owns independent
catalog and view streams, and results cannot depend on evaluation order.
"""

from __future__ import annotations

import hashlib
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .errors import ConfigurationError, TraceParseError, TraceStructureError

DEFAULT_PERIOD_HOURS = 720  # hourly views over 30 days

# Stream tags for the (seed, tag, video_index) SeedSequence scheme.
_TAG_CATALOG = 1
_TAG_VIEWS = 2

TRACE_HEADER = "h v"
CATALOG_HEADER = "id,size_mb,transcode_seconds_per_view"


def _stream(seed: int, tag: int, index: int) -> np.random.Generator:
    """Independent per-video PCG64 stream."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, tag, index))))


@dataclass(frozen=True)
class VideoAsset:
    """Immutable per-video metadata.

    `transcode_seconds_per_view` is the VM time one on-demand transcode of
    this video consumes; 1.0 means one second of compute per request.
    """

    id: str
    size_mb: float
    transcode_seconds_per_view: float = 1.0

    def __post_init__(self):
        if not self.id:
            raise ValueError("video id must be non-empty")
        if not self.size_mb > 0:
            raise ValueError(f"size_mb must be > 0, got {self.size_mb}")
        if not self.transcode_seconds_per_view > 0:
            raise ValueError(
                f"transcode_seconds_per_view must be > 0, got {self.transcode_seconds_per_view}"
            )


@dataclass(eq=False)
class ViewTrace:
    """Non-negative hourly view counts for one video over one period."""

    video_id: str
    hourly_views: np.ndarray
    period_hours: int = DEFAULT_PERIOD_HOURS

    def __post_init__(self):
        arr = np.asarray(self.hourly_views)
        if arr.ndim != 1:
            raise ValueError("hourly_views must be one-dimensional")
        if not np.issubdtype(arr.dtype, np.integer):
            if arr.size and not np.all(arr == np.floor(arr)):
                raise ValueError("hourly_views must be whole numbers")
        arr = arr.astype(np.int64)
        if self.period_hours < 1:
            raise ValueError(f"period_hours must be >= 1, got {self.period_hours}")
        if arr.size != self.period_hours:
            raise ValueError(
                f"trace length {arr.size} does not match period_hours {self.period_hours}"
            )
        if arr.size and int(arr.min()) < 0:
            raise ValueError("hourly views must be non-negative")
        arr.setflags(write=False)
        self.hourly_views = arr

    @property
    def total_views(self) -> int:
        return int(self.hourly_views.sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ViewTrace):
            return NotImplemented
        return (
            self.video_id == other.video_id
            and self.period_hours == other.period_hours
            and np.array_equal(self.hourly_views, other.hourly_views)
        )


@dataclass(frozen=True)
class WorkloadConfig:
    """Parameters for one synthetic workload.

    Sizes are log-normal in MB. `base_rate_fav` / `base_rate_cold` are the
    class-mean starting rates in views/hour; within a class the per-video
    rate is the class rate times a mean-one Zipf weight by rank. Hot videos
    drift by a per-video slope drawn uniformly from `trend_slope_range`
    (views/hour per hour, usually negative: popularity decays); cold videos
    hold their rate. With `noise` on, hourly counts are Poisson around the
    expected rate; off, they are the rounded rate.
    """

    n_videos: int = 1000
    fav_fraction: float = 0.15
    period_hours: int = DEFAULT_PERIOD_HOURS
    seed: int = 7
    size_log_mean: float = math.log(512.0)
    size_log_sd: float = 0.5
    zipf_exponent: float = 0.8
    trend_slope_range: tuple[float, float] = (-0.08, -0.03)
    base_rate_fav: float = 20.0
    base_rate_cold: float = 0.5
    noise: bool = True

    def __post_init__(self):
        if self.n_videos < 1:
            raise ConfigurationError(f"n_videos must be >= 1, got {self.n_videos}")
        if not 0.0 <= self.fav_fraction <= 1.0:
            raise ConfigurationError(f"fav_fraction must be in [0, 1], got {self.fav_fraction}")
        if self.period_hours < 2:
            raise ConfigurationError(f"period_hours must be >= 2, got {self.period_hours}")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.size_log_sd < 0:
            raise ConfigurationError(f"size_log_sd must be >= 0, got {self.size_log_sd}")
        if not self.zipf_exponent > 0:
            raise ConfigurationError(f"zipf_exponent must be > 0, got {self.zipf_exponent}")
        lo, hi = self.trend_slope_range
        if lo > hi:
            raise ConfigurationError(f"trend_slope_range must be ordered, got ({lo}, {hi})")
        if not self.base_rate_cold >= 0:
            raise ConfigurationError(f"base_rate_cold must be >= 0, got {self.base_rate_cold}")
        if not self.base_rate_fav > self.base_rate_cold:
            raise ConfigurationError(
                "base_rate_fav must exceed base_rate_cold, "
                f"got {self.base_rate_fav} <= {self.base_rate_cold}"
            )


def fav_video_count(n_videos: int, fav_fraction: float) -> int:
    """Number of videos assigned the hot rate: round(fav_fraction * n_videos)."""
    return int(math.floor(fav_fraction * n_videos + 0.5))


def _zipf_weights(m: int, exponent: float) -> np.ndarray:
    """Mean-one rank weights r^-exponent for ranks 1..m."""
    if m == 0:
        return np.empty(0)
    ranks = np.arange(1, m + 1, dtype=np.float64)
    w = ranks**-exponent
    return w / w.mean()


def synthesize_catalog(config: WorkloadConfig) -> list[VideoAsset]:
    """Generate `config.n_videos` assets with log-normal sizes.

    Deterministic in `config.seed`; video i draws from its own stream.
    Synthetic assets use one second of transcode time per view, the
    baseline compute model.
    """
    assets = []
    for i in range(config.n_videos):
        rng = _stream(config.seed, _TAG_CATALOG, i)
        size = float(rng.lognormal(config.size_log_mean, config.size_log_sd))
        assets.append(VideoAsset(id=f"v{i:05d}", size_mb=size))
    return assets


def synthesize_views(
    config: WorkloadConfig, catalog: Sequence[VideoAsset]
) -> dict[str, tuple[ViewTrace, ViewTrace]]:
    """Generate (current, next) period traces for every catalog video.

    The first round(fav_fraction * len(catalog)) videos in catalog order are
    the hot class; the rest are cold. Each video's expected rate at global
    hour h (1..2H spanning both periods) is max(0, base + trend*h). Hot
    videos draw trend from `trend_slope_range`; cold videos use trend 0.
    Deterministic in `config.seed` and catalog order.
    """
    if not catalog:
        raise ConfigurationError("catalog must not be empty")
    ids = [a.id for a in catalog]
    if len(set(ids)) != len(ids):
        raise ValueError("catalog ids must be unique")

    n = len(catalog)
    n_fav = fav_video_count(n, config.fav_fraction)
    H = config.period_hours
    hours = np.arange(1, 2 * H + 1, dtype=np.float64)
    w_fav = _zipf_weights(n_fav, config.zipf_exponent)
    w_cold = _zipf_weights(n - n_fav, config.zipf_exponent)
    lo, hi = config.trend_slope_range

    traces: dict[str, tuple[ViewTrace, ViewTrace]] = {}
    for i, asset in enumerate(catalog):
        rng = _stream(config.seed, _TAG_VIEWS, i)
        if i < n_fav:
            base = config.base_rate_fav * w_fav[i]
            trend = float(rng.uniform(lo, hi))
        else:
            base = config.base_rate_cold * w_cold[i - n_fav]
            trend = 0.0
        rates = np.maximum(base + trend * hours, 0.0)
        if config.noise:
            counts = rng.poisson(rates)
        else:
            counts = np.floor(rates + 0.5).astype(np.int64)
        traces[asset.id] = (
            ViewTrace(asset.id, counts[:H], H),
            ViewTrace(asset.id, counts[H:], H),
        )
    return traces


def expected_period_totals(
    base: float, trend: float, period_hours: int
) -> tuple[float, float]:
    """Expected (current, next) view totals of the clamped linear rate."""
    hours = np.arange(1, 2 * period_hours + 1, dtype=np.float64)
    rates = np.maximum(base + trend * hours, 0.0)
    return float(rates[:period_hours].sum()), float(rates[period_hours:].sum())


def split_traces(
    traces: dict[str, tuple[ViewTrace, ViewTrace]],
) -> tuple[dict[str, ViewTrace], dict[str, ViewTrace]]:
    """Split a synthesize_views map into (current, next) maps."""
    current = {vid: pair[0] for vid, pair in traces.items()}
    upcoming = {vid: pair[1] for vid, pair in traces.items()}
    return current, upcoming


def workload_digest(
    catalog: Sequence[VideoAsset], traces: dict[str, tuple[ViewTrace, ViewTrace]]
) -> str:
    """SHA-256 over the catalog and both trace periods, in catalog order."""
    h = hashlib.sha256()
    for asset in catalog:
        h.update(asset.id.encode("utf-8"))
        h.update(np.array([asset.size_mb, asset.transcode_seconds_per_view], "<f8").tobytes())
    for asset in catalog:
        current, upcoming = traces[asset.id]
        h.update(current.hourly_views.astype("<i8").tobytes())
        h.update(upcoming.hourly_views.astype("<i8").tobytes())
    return h.hexdigest()


def _atomic_write_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def load_trace(path: str | Path) -> ViewTrace:
    """Read one trace file: header `h v`, then `<hour> <views>` rows for 1..H.

    The video id is the filename up to its first dot. Raises
    FileNotFoundError for a missing file, TraceParseError (with line
    number) for malformed rows, and TraceStructureError when the hours do
    not form 1..H in ascending order.
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    if not lines or lines[0] != TRACE_HEADER:
        raise TraceParseError(f"expected header '{TRACE_HEADER}'", line=1)

    views: list[int] = []
    last_hour = 0
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise TraceParseError(f"expected '<hour> <views>', got {line!r}", line=lineno)
        try:
            hour = int(parts[0])
            count = int(parts[1])
        except ValueError:
            raise TraceParseError(f"non-integer value in row {line!r}", line=lineno) from None
        if count < 0:
            raise TraceParseError(f"negative view count {count}", line=lineno)
        if hour == last_hour:
            raise TraceStructureError(f"duplicate hour {hour}")
        if hour != last_hour + 1:
            raise TraceStructureError(
                f"hours must ascend contiguously from 1; got {hour} after {last_hour}"
            )
        last_hour = hour
        views.append(count)
    if not views:
        raise TraceStructureError("trace has no data rows")
    return ViewTrace(path.name.split(".")[0], np.array(views, dtype=np.int64), len(views))


def save_trace(trace: ViewTrace, path: str | Path) -> None:
    """Write a trace in the `h v` format read by load_trace."""
    path = Path(path)
    rows = [TRACE_HEADER]
    rows.extend(f"{h} {v}" for h, v in enumerate(trace.hourly_views, start=1))
    _atomic_write_text(path, "\n".join(rows) + "\n")


def save_catalog_csv(catalog: Sequence[VideoAsset], path: str | Path) -> None:
    """Write the catalog as CSV. Floats use shortest round-trip repr."""
    rows = [CATALOG_HEADER]
    rows.extend(
        f"{a.id},{a.size_mb!r},{a.transcode_seconds_per_view!r}" for a in catalog
    )
    _atomic_write_text(Path(path), "\n".join(rows) + "\n")


def load_catalog_csv(path: str | Path) -> list[VideoAsset]:
    """Read a catalog written by save_catalog_csv."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != CATALOG_HEADER:
        raise ValueError(f"expected catalog header '{CATALOG_HEADER}'")
    assets = []
    for line in lines[1:]:
        if not line.strip():
            continue
        vid, size, tau = line.split(",")
        assets.append(VideoAsset(vid, float(size), float(tau)))
    ids = [a.id for a in assets]
    if len(set(ids)) != len(ids):
        raise ValueError("catalog ids must be unique")
    return assets


def iter_trace_paths(traces_dir: str | Path, suffix: str) -> Iterator[Path]:
    """Yield trace files `<id>.<suffix>.dat` under a directory, sorted by id."""
    yield from sorted(Path(traces_dir).glob(f"*.{suffix}.dat"))
