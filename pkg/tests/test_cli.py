import json
import subprocess
import sys

import pytest

from vidcost.cli import main
from vidcost.config import SCHEMA, resolve_settings

SMALL_SIM = [
    "--set", "n_videos=20",
    "--set", "period_hours=24",
    "--set", "replications=2",
    "--set", "fav_sweep=0.1,0.3",
]


def run_cli(args):
    return main(list(args))


class TestFit:
    def test_collinear_trace(self, tmp_path, capsys):
        trace = tmp_path / "clip.dat"
        trace.write_text("h v\n1 2\n2 4\n3 6\n")
        assert run_cli(["fit", str(trace)]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "slope 2"
        assert out[1] == "intercept 0"
        assert out[2] == "next_period_views 30"

    def test_json_format(self, tmp_path, capsys):
        trace = tmp_path / "clip.dat"
        trace.write_text("h v\n1 2\n2 4\n3 6\n")
        assert run_cli(["fit", str(trace), "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["slope"] == pytest.approx(2.0)
        assert payload["next_period_views"] == pytest.approx(30.0)

    def test_writes_figure_when_out_given(self, tmp_path, capsys):
        trace = tmp_path / "clip.dat"
        trace.write_text("h v\n1 2\n2 4\n3 6\n")
        out = tmp_path / "figs"
        assert run_cli(["fit", str(trace), "--out", str(out)]) == 0
        assert (out / "fit_clip.png").stat().st_size > 0

    def test_missing_trace_fails_with_diagnostic(self, tmp_path, capsys):
        assert run_cli(["fit", str(tmp_path / "nope.dat")]) == 1
        assert "error:" in capsys.readouterr().err

    def test_malformed_trace_fails(self, tmp_path, capsys):
        trace = tmp_path / "bad.dat"
        trace.write_text("h v\n1 -5\n")
        assert run_cli(["fit", str(trace)]) == 1
        assert "line 2" in capsys.readouterr().err


class TestSynthAndDecide:
    def test_synth_writes_catalog_and_traces(self, tmp_path, capsys):
        out = tmp_path / "data"
        code = run_cli(
            ["synth", "--out", str(out), "--set", "n_videos=6", "--set", "period_hours=24"]
        )
        assert code == 0
        assert (out / "catalog.csv").exists()
        assert len(list((out / "traces").glob("*.current.dat"))) == 6
        assert len(list((out / "traces").glob("*.next.dat"))) == 6
        assert "workload digest" in capsys.readouterr().out

    def test_decide_emits_verdicts(self, tmp_path, capsys):
        data = tmp_path / "data"
        run_cli(["synth", "--out", str(data), "--set", "n_videos=6", "--set", "period_hours=24"])
        out = tmp_path / "verdicts"
        assert run_cli(["decide", str(data), "--out", str(out)]) == 0
        lines = (out / "decisions.csv").read_text().splitlines()
        assert lines[0] == "video_id,verdict,ratio,predicted_views"
        assert len(lines) == 7

    def test_decide_zero_forecast_video_is_deleted(self, tmp_path):
        data = tmp_path / "data"
        data.mkdir()
        (data / "catalog.csv").write_text(
            "id,size_mb,transcode_seconds_per_view\nvid,1024.0,1.0\n"
        )
        traces = data / "traces"
        traces.mkdir()
        # all-zero views: forecast 0, infinite ratio
        rows = "\n".join(f"{h} 0" for h in range(1, 25))
        (traces / "vid.current.dat").write_text(f"h v\n{rows}\n")
        out = tmp_path / "verdicts"
        assert run_cli(["decide", str(data), "--out", str(out)]) == 0
        line = (out / "decisions.csv").read_text().splitlines()[1]
        assert line.startswith("vid,Delete,inf,")

    def test_decide_missing_trace_names_video(self, tmp_path, capsys):
        data = tmp_path / "data"
        data.mkdir()
        (data / "catalog.csv").write_text(
            "id,size_mb,transcode_seconds_per_view\nghost,1024.0,1.0\n"
        )
        (data / "traces").mkdir()
        assert run_cli(["decide", str(data), "--out", str(tmp_path / "o")]) == 1
        assert "ghost" in capsys.readouterr().err


class TestSimulate:
    def test_outputs_and_determinism(self, tmp_path, capsys):
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        assert run_cli(["simulate", "--out", str(out_a), *SMALL_SIM]) == 0
        assert run_cli(["simulate", "--out", str(out_b), *SMALL_SIM]) == 0
        for name in ("report.csv", "plot_data.csv", "digests.csv"):
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes()
        assert (out_a / "cost_vs_fav.png").stat().st_size > 0

    def test_seed_changes_digests(self, tmp_path):
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        run_cli(["simulate", "--out", str(out_a), *SMALL_SIM, "--seed", "1"])
        run_cli(["simulate", "--out", str(out_b), *SMALL_SIM, "--seed", "2"])
        assert (out_a / "digests.csv").read_text() != (out_b / "digests.csv").read_text()
        assert (out_a / "report.csv").read_text() != (out_b / "report.csv").read_text()

    def test_json_format(self, tmp_path):
        out = tmp_path / "o"
        assert run_cli(["simulate", "--out", str(out), "--format", "json", *SMALL_SIM]) == 0
        payload = json.loads((out / "report.json").read_text())
        assert len(payload["rows"]) == 2 * 5
        assert not (out / "report.csv").exists()

    def test_human_summary_uses_two_decimals(self, tmp_path, capsys):
        run_cli(["simulate", "--out", str(tmp_path / "o"), *SMALL_SIM])
        out = capsys.readouterr().out
        assert "fav%" in out


class TestConfigHandling:
    def test_unknown_set_key_is_named(self, tmp_path, capsys):
        code = run_cli(["simulate", "--out", str(tmp_path / "o"), "--set", "bogus=1"])
        assert code == 1
        assert "bogus" in capsys.readouterr().err

    def test_unknown_file_key_is_named(self, tmp_path, capsys):
        cfg = tmp_path / "sim.cfg"
        cfg.write_text("mystery = 4\n")
        code = run_cli(["simulate", "--out", str(tmp_path / "o"), "--config", str(cfg)])
        assert code == 1
        assert "mystery" in capsys.readouterr().err

    def test_invalid_value_is_configuration_error(self, tmp_path, capsys):
        code = run_cli(
            ["simulate", "--out", str(tmp_path / "o"), "--set", "n_videos=lots"]
        )
        assert code == 1
        assert "n_videos" in capsys.readouterr().err

    def test_missing_config_file_errors(self, tmp_path, capsys):
        code = run_cli(
            ["simulate", "--out", str(tmp_path / "o"), "--config", str(tmp_path / "no.cfg")]
        )
        assert code == 1

    def test_unknown_subcommand_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_unknown_flag_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["fit", "x.dat", "--frobnicate"])
        assert exc.value.code == 2

    def test_override_precedence_for_every_key(self, tmp_path):
        # file overrides default, --set overrides file, for each documented key
        file_values = {
            "n_videos": "33",
            "fav_fraction": "0.22",
            "period_hours": "100",
            "seed": "1234",
            "size_log_mean": "5.5",
            "size_log_sd": "0.25",
            "zipf_exponent": "1.1",
            "trend_slope_min": "-0.5",
            "trend_slope_max": "-0.25",
            "base_rate_fav": "44.0",
            "base_rate_cold": "2.5",
            "noise": "false",
            "storage_price_per_gb_month": "0.031",
            "vm_price_per_hour": "0.07",
            "fav_sweep": "0.2,0.4",
            "policies": "oracle,predictive",
            "replications": "4",
        }
        set_values = {
            "n_videos": "44",
            "fav_fraction": "0.33",
            "period_hours": "200",
            "seed": "4321",
            "size_log_mean": "6.5",
            "size_log_sd": "0.75",
            "zipf_exponent": "0.9",
            "trend_slope_min": "-0.9",
            "trend_slope_max": "-0.1",
            "base_rate_fav": "55.0",
            "base_rate_cold": "1.5",
            "noise": "true",
            "storage_price_per_gb_month": "0.041",
            "vm_price_per_hour": "0.09",
            "fav_sweep": "0.1,0.5",
            "policies": "full_store",
            "replications": "6",
        }
        assert set(file_values) == set(SCHEMA)

        cfg = tmp_path / "sim.cfg"
        cfg.write_text("\n".join(f"{k} = {v}" for k, v in file_values.items()) + "\n")

        defaults = resolve_settings(None)
        from_file = resolve_settings(cfg)
        overridden = resolve_settings(
            cfg, overrides=[f"{k}={v}" for k, v in set_values.items()]
        )
        for key in SCHEMA:
            parsed_file = SCHEMA[key][0](file_values[key])
            parsed_set = SCHEMA[key][0](set_values[key])
            assert parsed_file != defaults[key], f"{key} file value must differ from default"
            assert from_file[key] == parsed_file
            assert overridden[key] == parsed_set

    def test_seed_flag_beats_set(self):
        settings = resolve_settings(None, overrides=["seed=10"], seed=20)
        assert settings["seed"] == 20

    def test_comments_and_blanks_ignored(self, tmp_path):
        cfg = tmp_path / "sim.cfg"
        cfg.write_text("# comment\n\nn_videos = 12\n")
        assert resolve_settings(cfg)["n_videos"] == 12


def test_module_entry_point(tmp_path):
    trace = tmp_path / "clip.dat"
    trace.write_text("h v\n1 2\n2 4\n3 6\n")
    proc = subprocess.run(
        [sys.executable, "-m", "vidcost", "fit", str(trace)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "slope 2"
