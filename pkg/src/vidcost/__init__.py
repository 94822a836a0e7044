"""vidcost: keep-or-retranscode cost simulation for cloud video repositories.

Decides, per video, whether storing pre-transcoded versions for the next
period beats deleting them and transcoding on demand, using per-video
linear-regression view forecasts, and compares that policy's total cloud
cost against baseline policies across synthetic workloads.
"""

from .costs import (
    DEFAULT_PRICES,
    CostBreakdown,
    PriceSheet,
    cost_ratio,
    storage_cost,
    transcode_cost,
)
from .errors import ConfigurationError, TraceParseError, TraceStructureError
from .forecast import LinearModel, fit_ols, ols_forecast, predict_next_period_views
from .policies import (
    ALL_POLICIES,
    PeriodReport,
    PolicyDecision,
    PolicyKind,
    Verdict,
    decide,
    run_policy,
    write_decisions_csv,
    write_period_reports_csv,
)
from .simulate import (
    DEFAULT_FAV_SWEEP,
    ExperimentConfig,
    ExperimentReport,
    ExperimentRow,
    derive_cell_seed,
    run_experiment,
    write_digests_csv,
    write_plot_data_csv,
    write_report_csv,
)
from .workload import (
    DEFAULT_PERIOD_HOURS,
    VideoAsset,
    ViewTrace,
    WorkloadConfig,
    fav_video_count,
    load_catalog_csv,
    load_trace,
    save_catalog_csv,
    save_trace,
    split_traces,
    synthesize_catalog,
    synthesize_views,
    workload_digest,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_POLICIES",
    "ConfigurationError",
    "CostBreakdown",
    "DEFAULT_FAV_SWEEP",
    "DEFAULT_PERIOD_HOURS",
    "DEFAULT_PRICES",
    "ExperimentConfig",
    "ExperimentReport",
    "ExperimentRow",
    "LinearModel",
    "PeriodReport",
    "PolicyDecision",
    "PolicyKind",
    "PriceSheet",
    "TraceParseError",
    "TraceStructureError",
    "Verdict",
    "VideoAsset",
    "ViewTrace",
    "WorkloadConfig",
    "cost_ratio",
    "decide",
    "derive_cell_seed",
    "fav_video_count",
    "fit_ols",
    "load_catalog_csv",
    "load_trace",
    "ols_forecast",
    "predict_next_period_views",
    "run_experiment",
    "run_policy",
    "save_catalog_csv",
    "save_trace",
    "split_traces",
    "storage_cost",
    "synthesize_catalog",
    "synthesize_views",
    "transcode_cost",
    "workload_digest",
    "write_decisions_csv",
    "write_digests_csv",
    "write_period_reports_csv",
    "write_plot_data_csv",
    "write_report_csv",
]
