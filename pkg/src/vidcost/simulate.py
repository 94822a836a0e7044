"""Experiment orchestration: sweep the hot-video share, score every policy.

For each (fraction, replication) cell one workload is synthesized and every
requested policy is scored on that identical workload, so policy columns
are directly comparable. Cell seeds come from SeedSequence over
(base seed, fraction index, replication index); adding policies or
appending sweep fractions therefore never perturbs existing cells.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .costs import DEFAULT_PRICES, PriceSheet
from .errors import ConfigurationError
from .policies import ALL_POLICIES, MONEY_FORMAT, PolicyKind, run_policy
from .workload import (
    WorkloadConfig,
    split_traces,
    synthesize_catalog,
    synthesize_views,
    workload_digest,
)

log = logging.getLogger(__name__)

DEFAULT_FAV_SWEEP = (0.05, 0.10, 0.15, 0.20, 0.25, 0.30)


@dataclass(frozen=True)
class ExperimentConfig:
    """Full sweep description. `workload` is a template whose fav_fraction
    and seed are overridden per cell."""

    workload: WorkloadConfig = WorkloadConfig()
    fav_sweep: tuple[float, ...] = DEFAULT_FAV_SWEEP
    policies: tuple[PolicyKind, ...] = ALL_POLICIES
    prices: PriceSheet = DEFAULT_PRICES
    replications: int = 30
    seed: int = 7

    def __post_init__(self):
        if not self.fav_sweep:
            raise ConfigurationError("fav_sweep must not be empty")
        for f in self.fav_sweep:
            if not 0.0 <= f <= 1.0:
                raise ConfigurationError(f"fav_sweep values must be in [0, 1], got {f}")
        if not self.policies:
            raise ConfigurationError("policies must not be empty")
        if len(set(self.policies)) != len(self.policies):
            raise ConfigurationError("policies must not repeat")
        if self.replications < 1:
            raise ConfigurationError(f"replications must be >= 1, got {self.replications}")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


@dataclass(frozen=True)
class ExperimentRow:
    """Replication means for one (fraction, policy) pair."""

    fav_fraction: float
    policy: PolicyKind
    mean_total_dollars: float
    mean_storage_dollars: float
    mean_transcode_dollars: float


@dataclass
class ExperimentReport:
    """Sweep results plus the per-cell workload digests."""

    rows: tuple[ExperimentRow, ...]
    fav_sweep: tuple[float, ...]
    policies: tuple[PolicyKind, ...]
    replications: int
    digests: dict[tuple[int, int], str]


def derive_cell_seed(base_seed: int, fraction_index: int, replication: int) -> int:
    """Workload seed for one sweep cell, mixed via SeedSequence."""
    ss = np.random.SeedSequence((base_seed, fraction_index, replication))
    return int(ss.generate_state(1, np.uint64)[0])


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Run the sweep and return per-(fraction, policy) replication means."""
    digests: dict[tuple[int, int], str] = {}
    sums: dict[tuple[int, PolicyKind], list[float]] = {
        (fi, pk): [0.0, 0.0, 0.0]
        for fi in range(len(config.fav_sweep))
        for pk in config.policies
    }

    for fi, fraction in enumerate(config.fav_sweep):
        for rep in range(config.replications):
            cell_seed = derive_cell_seed(config.seed, fi, rep)
            wcfg = replace(config.workload, fav_fraction=fraction, seed=cell_seed)
            catalog = synthesize_catalog(wcfg)
            traces = synthesize_views(wcfg, catalog)
            current, upcoming = split_traces(traces)
            digest = workload_digest(catalog, traces)
            digests[(fi, rep)] = digest
            log.debug(
                "cell fav=%g rep=%d seed=%d digest=%s", fraction, rep, cell_seed, digest
            )
            for pk in config.policies:
                report = run_policy(pk, catalog, current, upcoming, config.prices)
                acc = sums[(fi, pk)]
                acc[0] += report.total_dollars
                acc[1] += report.storage_dollars
                acc[2] += report.transcode_dollars

    n = config.replications
    rows = tuple(
        ExperimentRow(
            fav_fraction=fraction,
            policy=pk,
            mean_total_dollars=sums[(fi, pk)][0] / n,
            mean_storage_dollars=sums[(fi, pk)][1] / n,
            mean_transcode_dollars=sums[(fi, pk)][2] / n,
        )
        for fi, fraction in enumerate(config.fav_sweep)
        for pk in config.policies
    )
    return ExperimentReport(
        rows=rows,
        fav_sweep=config.fav_sweep,
        policies=config.policies,
        replications=config.replications,
        digests=digests,
    )


def _atomic_write_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


REPORT_HEADER = (
    "fav_fraction,policy,mean_total_dollars,mean_storage_dollars,mean_transcode_dollars"
)


def write_report_csv(report: ExperimentReport, path: str | Path) -> None:
    """Long-format sweep CSV; dollars rounded to 6 decimal places."""
    rows = [REPORT_HEADER]
    for r in report.rows:
        rows.append(
            f"{r.fav_fraction:g},{r.policy.value},"
            f"{MONEY_FORMAT.format(r.mean_total_dollars)},"
            f"{MONEY_FORMAT.format(r.mean_storage_dollars)},"
            f"{MONEY_FORMAT.format(r.mean_transcode_dollars)}"
        )
    _atomic_write_text(Path(path), "\n".join(rows) + "\n")


def read_report_csv(path: str | Path) -> list[tuple[float, str, float, float, float]]:
    """Parse a sweep CSV back into (fraction, policy, total, storage, transcode)."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != REPORT_HEADER:
        raise ValueError(f"expected report header '{REPORT_HEADER}'")
    out = []
    for line in lines[1:]:
        if not line.strip():
            continue
        frac, policy, total, storage, transcode = line.split(",")
        out.append((float(frac), policy, float(total), float(storage), float(transcode)))
    return out


def write_plot_data_csv(report: ExperimentReport, path: str | Path) -> None:
    """Wide-format plot data: one fraction column, one mean-total series per policy."""
    by_cell = {(r.fav_fraction, r.policy): r.mean_total_dollars for r in report.rows}
    header = "fav_fraction," + ",".join(pk.value for pk in report.policies)
    rows = [header]
    for fraction in report.fav_sweep:
        cells = ",".join(
            MONEY_FORMAT.format(by_cell[(fraction, pk)]) for pk in report.policies
        )
        rows.append(f"{fraction:g},{cells}")
    _atomic_write_text(Path(path), "\n".join(rows) + "\n")


def write_digests_csv(report: ExperimentReport, path: str | Path) -> None:
    """Per-cell workload digests, for reproducibility audits."""
    rows = ["fraction_index,replication,digest"]
    for (fi, rep) in sorted(report.digests):
        rows.append(f"{fi},{rep},{report.digests[(fi, rep)]}")
    _atomic_write_text(Path(path), "\n".join(rows) + "\n")


def report_as_dict(report: ExperimentReport) -> dict:
    """JSON-ready view of the sweep, dollars rounded to 6 decimals."""
    return {
        "fav_sweep": list(report.fav_sweep),
        "policies": [pk.value for pk in report.policies],
        "replications": report.replications,
        "rows": [
            {
                "fav_fraction": r.fav_fraction,
                "policy": r.policy.value,
                "mean_total_dollars": round(r.mean_total_dollars, 6),
                "mean_storage_dollars": round(r.mean_storage_dollars, 6),
                "mean_transcode_dollars": round(r.mean_transcode_dollars, 6),
            }
            for r in report.rows
        ],
    }
