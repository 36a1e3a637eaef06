# util/config.py

import os
import logging
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Optional

import yaml

from util.errors import SchemaError

# ---------------- Logging ----------------
LOG = logging.getLogger("kahlermix.config")

ENV_PREFIX = "KAHLERMIX_"
# CLI flags whose name differs from the RunConfig field
FLAG_NAMES = {"catalog_path": "catalog", "output_dir": "out", "mc_blocks": "blocks"}
DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config.yaml"


# ---------------- Config ----------------
def load_config(path=DEFAULT_CONFIG_PATH) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as f:
            cfg = yaml.safe_load(f) or {}
        LOG.info("Config loaded from %s", path)
        return cfg
    except FileNotFoundError:
        LOG.warning("Config file %s not found; using defaults", path)
        return {}
    except Exception as e:
        LOG.error("Failed to load config: %s", e)
        return {}


def config_path(flag: Optional[str], environ=None):
    """--config beats KAHLERMIX_CONFIG beats the bundled config.yaml."""
    environ = os.environ if environ is None else environ
    return flag or environ.get(ENV_PREFIX + "CONFIG") or DEFAULT_CONFIG_PATH


@dataclass(frozen=True)
class RunConfig:
    """Resolved parameters of one command run (defaults < yaml < env < flags)."""

    catalog_path: str = "data/catalog.json"
    output_dir: str = "reports"
    instance: Optional[str] = None
    n_max: int = 30
    samples: int = 100_000
    seed: Optional[int] = None
    delta: Optional[float] = None
    beta: float = 2.0
    beta_prime: float = 2.0
    radius: int = 1
    pair: str = "cos-pair"
    svg: bool = False
    complete: bool = False
    refined: bool = False
    # numerics
    tolerance: float = 1e-9
    certify_rel: float = 1e-9
    root_dps: int = 60
    max_root_dps: int = 480
    precision_bits: int = 128
    margin_delta0: float = 1e-3
    growth_n: int = 200
    growth_band: float = 0.25
    correlation_floor: float = 1e-14
    mc_blocks: int = 16
    mc_chunk: int = 4096
    max_workers: int = 4
    log_level: str = "INFO"

    def __post_init__(self):
        for name in ("tolerance", "certify_rel", "margin_delta0", "growth_band",
                     "correlation_floor"):
            if not getattr(self, name) > 0:
                raise SchemaError(f"{name} must be > 0 (got {getattr(self, name)!r})")
        for name in ("n_max", "samples", "radius", "root_dps", "precision_bits",
                     "growth_n", "mc_blocks", "mc_chunk", "max_workers"):
            if getattr(self, name) < 0:
                raise SchemaError(f"{name} must be non-negative")
        if self.precision_bits < 128:
            raise SchemaError("precision_bits must be at least 128")

    def require_seed(self) -> int:
        if self.seed is None:
            raise SchemaError("a --seed is required whenever Monte Carlo runs")
        return self.seed


def _coerce(value: Any, target: Any, name: str):
    if value is None:
        return None
    if isinstance(target, bool):
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in {"1", "true", "yes", "y", "t"}:
            return True
        if text in {"0", "false", "no", "n", "f"}:
            return False
        raise SchemaError(f"{name}: expected a boolean, got {value!r}")
    try:
        if isinstance(target, int):
            return int(value)
        if isinstance(target, float):
            return float(value)
    except (TypeError, ValueError) as e:
        raise SchemaError(f"{name}: {e}") from e
    return value


def _typed_defaults() -> dict:
    base = RunConfig()
    defaults = {f.name: getattr(base, f.name) for f in fields(RunConfig)}
    # optional fields take their type from the CLI parser
    defaults["seed"] = 0
    defaults["delta"] = 0.0
    defaults["instance"] = ""
    return defaults


def resolve_config(
    cli_values: dict, config_path=DEFAULT_CONFIG_PATH, environ=None
) -> RunConfig:
    """
    Merge the layers into a RunConfig.
    cli_values holds only flags the user actually passed (None = not passed).
    """
    environ = os.environ if environ is None else environ
    typed = _typed_defaults()
    values: dict = {}

    for key, value in load_config(config_path).items():
        if key in typed:
            values[key] = _coerce(value, typed[key], key)
        else:
            LOG.warning("Ignoring unknown config key %r", key)

    for key in typed:
        names = [ENV_PREFIX + key.upper()]
        if key in FLAG_NAMES:
            names.append(ENV_PREFIX + FLAG_NAMES[key].upper())
        for env_name in names:
            if env_name in environ:
                values[key] = _coerce(environ[env_name], typed[key], env_name)
                LOG.debug("Override from %s", env_name)

    for key, value in cli_values.items():
        if value is not None and key in typed:
            values[key] = value

    cfg = replace(RunConfig(), **values)
    LOG.info(
        "Config: catalog=%s out=%s precision=%d bits tolerance=%g",
        cfg.catalog_path,
        cfg.output_dir,
        cfg.precision_bits,
        cfg.tolerance,
    )
    return cfg
