"""Command-line interface.

Subcommands: synth (write a synthetic workload), fit (regress one trace
file and print the forecast), decide (per-video keep/delete verdicts), and
simulate (full sweep with CSV, plot data, and a rendered figure).
Exit codes: 0 success, 1 configuration/input/data errors, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import config as cfg
from .errors import ConfigurationError
from .forecast import fit_ols, ols_forecast, predict_next_period_views
from .policies import decide, write_decisions_csv
from .simulate import (
    ExperimentReport,
    report_as_dict,
    run_experiment,
    write_digests_csv,
    write_plot_data_csv,
    write_report_csv,
)
from .workload import (
    load_catalog_csv,
    load_trace,
    save_catalog_csv,
    save_trace,
    split_traces,
    synthesize_catalog,
    synthesize_views,
    workload_digest,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vidcost",
        description="Keep-or-retranscode cost simulation for cloud video repositories.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p: argparse.ArgumentParser, out_required: bool) -> None:
        p.add_argument("--config", type=Path, default=None, help="config file path")
        p.add_argument(
            "--out", type=Path, required=out_required, help="output directory"
        )
        p.add_argument(
            "--set",
            dest="overrides",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override one config key (repeatable)",
        )
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--seed", type=int, default=None, help="override the seed key")

    p_synth = sub.add_parser("synth", help="write a synthetic catalog and trace files")
    add_common(p_synth, out_required=True)

    p_fit = sub.add_parser("fit", help="fit a regression on one trace file")
    p_fit.add_argument("trace", type=Path, help="trace file (header 'h v')")
    add_common(p_fit, out_required=False)

    p_decide = sub.add_parser("decide", help="keep/delete verdicts for a stored workload")
    p_decide.add_argument(
        "data_dir", type=Path, help="directory holding catalog.csv and traces/ from synth"
    )
    add_common(p_decide, out_required=True)

    p_sim = sub.add_parser("simulate", help="run the cost sweep over hot-video fractions")
    add_common(p_sim, out_required=True)

    return parser


def _fmt(value: float) -> str:
    return f"{value + 0.0:.12g}"


def _cmd_synth(args) -> int:
    settings = cfg.resolve_settings(args.config, args.overrides, args.seed)
    workload = cfg.workload_from_settings(settings)
    catalog = synthesize_catalog(workload)
    traces = synthesize_views(workload, catalog)

    out = Path(args.out)
    traces_dir = out / "traces"
    traces_dir.mkdir(parents=True, exist_ok=True)
    save_catalog_csv(catalog, out / "catalog.csv")
    for vid, (current, upcoming) in traces.items():
        save_trace(current, traces_dir / f"{vid}.current.dat")
        save_trace(upcoming, traces_dir / f"{vid}.next.dat")
    digest = workload_digest(catalog, traces)
    print(f"wrote {len(catalog)} videos to {out}")
    print(f"workload digest {digest}")
    return 0


def _cmd_fit(args) -> int:
    trace = load_trace(args.trace)
    model = fit_ols(trace)
    forecast = predict_next_period_views(model, trace.period_hours)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "slope": model.slope,
                    "intercept": model.intercept,
                    "next_period_views": forecast,
                }
            )
        )
    else:
        print(f"slope {_fmt(model.slope)}")
        print(f"intercept {_fmt(model.intercept)}")
        print(f"next_period_views {_fmt(forecast)}")
    if args.out is not None:
        from .figures import render_trace_fit

        args.out.mkdir(parents=True, exist_ok=True)
        figure_path = args.out / f"fit_{trace.video_id}.png"
        render_trace_fit(trace, model, figure_path)
        print(f"figure {figure_path}")
    return 0


def _cmd_decide(args) -> int:
    settings = cfg.resolve_settings(args.config, args.overrides, args.seed)
    prices = cfg.prices_from_settings(settings)
    data_dir = Path(args.data_dir)
    catalog = load_catalog_csv(data_dir / "catalog.csv")
    decisions = []
    for asset in catalog:
        trace_path = data_dir / "traces" / f"{asset.id}.current.dat"
        if not trace_path.exists():
            raise ConfigurationError(f"missing current trace for video '{asset.id}'")
        decisions.append(decide(asset, ols_forecast(load_trace(trace_path)), prices))

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.format == "json":
        payload = [
            {
                "video_id": d.video_id,
                "verdict": d.verdict.value,
                "ratio": d.estimated_ratio,
                "predicted_views": d.predicted_views,
            }
            for d in decisions
        ]
        (out / "decisions.json").write_text(json.dumps(payload, indent=2) + "\n")
    else:
        write_decisions_csv(decisions, out / "decisions.csv")
    kept = sum(d.verdict.value == "Keep" for d in decisions)
    print(f"decided {len(decisions)} videos: {kept} keep, {len(decisions) - kept} delete")
    return 0


def _print_summary(report: ExperimentReport) -> None:
    by_cell = {(r.fav_fraction, r.policy): r.mean_total_dollars for r in report.rows}
    names = [pk.value for pk in report.policies]
    print("fav%  " + "  ".join(f"{n:>16s}" for n in names))
    for fraction in report.fav_sweep:
        cells = "  ".join(
            f"{by_cell[(fraction, pk)]:16.2f}" for pk in report.policies
        )
        print(f"{100 * fraction:4.0f}  {cells}")


def _cmd_simulate(args) -> int:
    settings = cfg.resolve_settings(args.config, args.overrides, args.seed)
    experiment = cfg.experiment_from_settings(settings)
    report = run_experiment(experiment)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.format == "json":
        (out / "report.json").write_text(json.dumps(report_as_dict(report), indent=2) + "\n")
    else:
        write_report_csv(report, out / "report.csv")
    write_plot_data_csv(report, out / "plot_data.csv")
    write_digests_csv(report, out / "digests.csv")

    from .figures import render_cost_curves

    render_cost_curves(report, out / "cost_vs_fav.png")
    _print_summary(report)
    print(f"wrote report files to {out}")
    return 0


_COMMANDS = {
    "synth": _cmd_synth,
    "fit": _cmd_fit,
    "decide": _cmd_decide,
    "simulate": _cmd_simulate,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.subcommand](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
