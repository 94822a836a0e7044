"""Keep/Delete policies and their realized-cost scoring.

A policy decides, per video, whether to keep stored versions for the next
period or delete them and transcode on demand. Scoring charges a kept
video one month of storage and a deleted video the transcoding cost of its
actual next-period views; forecasts only drive the decision, never the
bill. Aggregation walks the catalog in order with plain float sums so
reports are reproducible to the bit.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .costs import PriceSheet, cost_ratio, storage_cost, transcode_cost
from .forecast import ols_forecast
from .workload import VideoAsset, ViewTrace

MONEY_FORMAT = "{:.6f}"


class Verdict(Enum):
    KEEP = "Keep"
    DELETE = "Delete"


class PolicyKind(Enum):
    FULL_STORE = "full_store"
    FULL_TRANSCODE = "full_transcode"
    PREDICTIVE = "predictive"
    STATIC_THRESHOLD = "static_threshold"
    ORACLE = "oracle"


ALL_POLICIES: tuple[PolicyKind, ...] = tuple(PolicyKind)


@dataclass(frozen=True)
class PolicyDecision:
    """One video's verdict with the cost ratio that produced it."""

    video_id: str
    verdict: Verdict
    estimated_ratio: float
    predicted_views: float

    def __post_init__(self):
        if math.isnan(self.estimated_ratio) or self.estimated_ratio < 0:
            raise ValueError(f"estimated_ratio must be >= 0, got {self.estimated_ratio}")
        if not (math.isfinite(self.predicted_views) and self.predicted_views >= 0):
            raise ValueError(f"predicted_views must be finite and >= 0, got {self.predicted_views}")
        if (self.verdict is Verdict.KEEP) != (self.estimated_ratio <= 1.0):
            raise ValueError(
                f"verdict {self.verdict.value} inconsistent with ratio {self.estimated_ratio}"
            )


@dataclass
class PeriodReport:
    """Realized dollars and decisions for one policy over one period."""

    policy: PolicyKind
    storage_dollars: float
    transcode_dollars: float
    kept_count: int
    deleted_count: int
    decisions: tuple[PolicyDecision, ...]

    def __post_init__(self):
        if self.kept_count + self.deleted_count != len(self.decisions):
            raise ValueError("kept_count + deleted_count must equal the decision count")

    @property
    def total_dollars(self) -> float:
        return self.storage_dollars + self.transcode_dollars


def decide(asset: VideoAsset, predicted_views: float, prices: PriceSheet) -> PolicyDecision:
    """Keep iff one month of storage costs no more than transcoding the forecast.

    Computes ratio = storage(1 month) / transcode(predicted views); Keep when
    ratio <= 1, Delete when ratio > 1 (including the infinite ratio of a
    zero-view forecast).
    """
    stored = storage_cost(asset, prices, months=1.0)
    estimated = transcode_cost(asset, predicted_views, prices)
    ratio = cost_ratio(stored, estimated)
    verdict = Verdict.KEEP if ratio <= 1.0 else Verdict.DELETE
    return PolicyDecision(asset.id, verdict, ratio, predicted_views)


def _forced_decision(asset: VideoAsset, verdict: Verdict) -> PolicyDecision:
    # Degenerate ratios keep the verdict/ratio invariant satisfied for the
    # policies that never consult costs.
    ratio = 0.0 if verdict is Verdict.KEEP else math.inf
    return PolicyDecision(asset.id, verdict, ratio, 0.0)


def run_policy(
    kind: PolicyKind,
    catalog: Sequence[VideoAsset],
    current_traces: Mapping[str, ViewTrace],
    next_traces: Mapping[str, ViewTrace],
    prices: PriceSheet,
    predictor_hook: Callable[[ViewTrace], float] | None = None,
) -> PeriodReport:
    """Decide every video under one policy and score against realized views.

    Forecast source per policy: predictive fits a regression on the current
    trace (or calls `predictor_hook` if given), static_threshold reuses the
    current-period total, oracle peeks at the actual next-period total, and
    full_store / full_transcode skip forecasting entirely.
    """
    hook = predictor_hook if predictor_hook is not None else ols_forecast

    storage_total = 0.0
    transcode_total = 0.0
    kept = 0
    deleted = 0
    decisions: list[PolicyDecision] = []
    for asset in catalog:
        current = current_traces.get(asset.id)
        if current is None:
            raise ValueError(f"missing current trace for video '{asset.id}'")
        upcoming = next_traces.get(asset.id)
        if upcoming is None:
            raise ValueError(f"missing next trace for video '{asset.id}'")

        if kind is PolicyKind.FULL_STORE:
            decision = _forced_decision(asset, Verdict.KEEP)
        elif kind is PolicyKind.FULL_TRANSCODE:
            decision = _forced_decision(asset, Verdict.DELETE)
        elif kind is PolicyKind.PREDICTIVE:
            decision = decide(asset, hook(current), prices)
        elif kind is PolicyKind.STATIC_THRESHOLD:
            decision = decide(asset, float(current.total_views), prices)
        elif kind is PolicyKind.ORACLE:
            decision = decide(asset, float(upcoming.total_views), prices)
        else:  # pragma: no cover - closed enumeration
            raise ValueError(f"unknown policy kind {kind}")

        if decision.verdict is Verdict.KEEP:
            storage_total += storage_cost(asset, prices, months=1.0)
            kept += 1
        else:
            transcode_total += transcode_cost(asset, upcoming.total_views, prices)
            deleted += 1
        decisions.append(decision)

    return PeriodReport(
        policy=kind,
        storage_dollars=storage_total,
        transcode_dollars=transcode_total,
        kept_count=kept,
        deleted_count=deleted,
        decisions=tuple(decisions),
    )


def _atomic_write_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


PERIOD_REPORT_HEADER = "policy,storage_dollars,transcode_dollars,total_dollars,kept,deleted"
DECISIONS_HEADER = "video_id,verdict,ratio,predicted_views"


def write_period_reports_csv(reports: Sequence[PeriodReport], path: str | Path) -> None:
    """One summary row per policy; dollars rounded to 6 decimal places."""
    rows = [PERIOD_REPORT_HEADER]
    for r in reports:
        rows.append(
            ",".join(
                (
                    r.policy.value,
                    MONEY_FORMAT.format(r.storage_dollars),
                    MONEY_FORMAT.format(r.transcode_dollars),
                    MONEY_FORMAT.format(r.total_dollars),
                    str(r.kept_count),
                    str(r.deleted_count),
                )
            )
        )
    _atomic_write_text(Path(path), "\n".join(rows) + "\n")


def write_decisions_csv(decisions: Sequence[PolicyDecision], path: str | Path) -> None:
    """Per-video verdict rows; ratio and views use shortest round-trip repr."""
    rows = [DECISIONS_HEADER]
    for d in decisions:
        rows.append(
            f"{d.video_id},{d.verdict.value},{d.estimated_ratio!r},{d.predicted_views!r}"
        )
    _atomic_write_text(Path(path), "\n".join(rows) + "\n")


def read_decisions_csv(path: str | Path) -> list[PolicyDecision]:
    """Inverse of write_decisions_csv."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != DECISIONS_HEADER:
        raise ValueError(f"expected decisions header '{DECISIONS_HEADER}'")
    out = []
    for line in lines[1:]:
        if not line.strip():
            continue
        vid, verdict, ratio, views = line.split(",")
        out.append(PolicyDecision(vid, Verdict(verdict), float(ratio), float(views)))
    return out
