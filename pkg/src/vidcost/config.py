"""Flat key=value configuration for the command line.

The config file is UTF-8 text, one `key = value` per line, `#` comments
and blank lines ignored. Every key has a built-in default; precedence is
command-line --set override, then config file, then default. Unknown keys
are rejected by name, in files and overrides alike.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Callable

from .costs import PriceSheet
from .errors import ConfigurationError
from .policies import PolicyKind
from .simulate import DEFAULT_FAV_SWEEP, ExperimentConfig
from .workload import WorkloadConfig


def _parse_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {raw!r}")


def _parse_float_list(raw: str) -> tuple[float, ...]:
    return tuple(float(part) for part in raw.split(",") if part.strip())


def _parse_policies(raw: str) -> tuple[PolicyKind, ...]:
    names = [part.strip() for part in raw.split(",") if part.strip()]
    try:
        return tuple(PolicyKind(name) for name in names)
    except ValueError:
        valid = ", ".join(pk.value for pk in PolicyKind)
        raise ValueError(f"policies must be drawn from: {valid}") from None


_DEFAULT_WORKLOAD = WorkloadConfig()

# key -> (parser, default)
SCHEMA: dict[str, tuple[Callable[[str], Any], Any]] = {
    "n_videos": (int, _DEFAULT_WORKLOAD.n_videos),
    "fav_fraction": (float, _DEFAULT_WORKLOAD.fav_fraction),
    "period_hours": (int, _DEFAULT_WORKLOAD.period_hours),
    "seed": (int, 7),
    "size_log_mean": (float, _DEFAULT_WORKLOAD.size_log_mean),
    "size_log_sd": (float, _DEFAULT_WORKLOAD.size_log_sd),
    "zipf_exponent": (float, _DEFAULT_WORKLOAD.zipf_exponent),
    "trend_slope_min": (float, _DEFAULT_WORKLOAD.trend_slope_range[0]),
    "trend_slope_max": (float, _DEFAULT_WORKLOAD.trend_slope_range[1]),
    "base_rate_fav": (float, _DEFAULT_WORKLOAD.base_rate_fav),
    "base_rate_cold": (float, _DEFAULT_WORKLOAD.base_rate_cold),
    "noise": (_parse_bool, _DEFAULT_WORKLOAD.noise),
    "storage_price_per_gb_month": (float, PriceSheet().storage_price_per_gb_month),
    "vm_price_per_hour": (float, PriceSheet().vm_price_per_hour),
    "fav_sweep": (_parse_float_list, DEFAULT_FAV_SWEEP),
    "policies": (_parse_policies, tuple(PolicyKind)),
    "replications": (int, 30),
}


def parse_value(key: str, raw: str) -> Any:
    if key not in SCHEMA:
        raise ConfigurationError(f"unknown configuration key '{key}'")
    parser, _ = SCHEMA[key]
    try:
        return parser(raw.strip())
    except ConfigurationError:
        raise
    except ValueError as exc:
        raise ConfigurationError(f"invalid value for '{key}': {exc}") from None


def read_config_file(path: str | Path) -> dict[str, Any]:
    """Parse a config file into typed settings."""
    settings: dict[str, Any] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigurationError(f"expected 'key = value' on line {lineno}, got {line!r}")
        key, raw = stripped.split("=", 1)
        key = key.strip()
        settings[key] = parse_value(key, raw)
    return settings


def resolve_settings(
    config_path: str | Path | None,
    overrides: list[str] | None = None,
    seed: int | None = None,
) -> dict[str, Any]:
    """Merge defaults, config file, --set overrides, and --seed, in that order."""
    settings = {key: default for key, (_, default) in SCHEMA.items()}
    if config_path is not None:
        settings.update(read_config_file(config_path))
    for item in overrides or []:
        if "=" not in item:
            raise ConfigurationError(f"override must look like key=value, got {item!r}")
        key, raw = item.split("=", 1)
        key = key.strip()
        settings[key] = parse_value(key, raw)
    if seed is not None:
        settings["seed"] = seed
    return settings


def workload_from_settings(settings: dict[str, Any]) -> WorkloadConfig:
    return WorkloadConfig(
        n_videos=settings["n_videos"],
        fav_fraction=settings["fav_fraction"],
        period_hours=settings["period_hours"],
        seed=settings["seed"],
        size_log_mean=settings["size_log_mean"],
        size_log_sd=settings["size_log_sd"],
        zipf_exponent=settings["zipf_exponent"],
        trend_slope_range=(settings["trend_slope_min"], settings["trend_slope_max"]),
        base_rate_fav=settings["base_rate_fav"],
        base_rate_cold=settings["base_rate_cold"],
        noise=settings["noise"],
    )


def prices_from_settings(settings: dict[str, Any]) -> PriceSheet:
    return PriceSheet(
        storage_price_per_gb_month=settings["storage_price_per_gb_month"],
        vm_price_per_hour=settings["vm_price_per_hour"],
    )


def experiment_from_settings(settings: dict[str, Any]) -> ExperimentConfig:
    return ExperimentConfig(
        workload=workload_from_settings(settings),
        fav_sweep=tuple(settings["fav_sweep"]),
        policies=tuple(settings["policies"]),
        prices=prices_from_settings(settings),
        replications=settings["replications"],
        seed=settings["seed"],
    )
