# test/test_config.py
import pytest

from util.config import DEFAULT_CONFIG_PATH, RunConfig, config_path, load_config, resolve_config
from util.errors import SchemaError


@pytest.fixture
def yaml_path(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("n_max: 12\nsamples: 5000\nsvg: yes\ntolerance: 1.0e-8\n", encoding="utf-8")
    return path


def test_defaults_when_file_missing(tmp_path):
    assert load_config(tmp_path / "absent.yaml") == {}
    cfg = resolve_config({}, tmp_path / "absent.yaml", environ={})
    assert cfg == RunConfig()


def test_yaml_layer(yaml_path):
    cfg = resolve_config({}, yaml_path, environ={})
    assert cfg.n_max == 12
    assert cfg.samples == 5000
    assert cfg.svg is True
    assert cfg.tolerance == 1e-8


def test_env_overrides_yaml(yaml_path):
    env = {"KAHLERMIX_N_MAX": "20", "KAHLERMIX_SVG": "false", "KAHLERMIX_SEED": "7"}
    cfg = resolve_config({}, yaml_path, environ=env)
    assert cfg.n_max == 20
    assert cfg.svg is False
    assert cfg.seed == 7


def test_flags_override_env(yaml_path):
    env = {"KAHLERMIX_N_MAX": "20"}
    cfg = resolve_config({"n_max": 40, "delta": None}, yaml_path, environ=env)
    assert cfg.n_max == 40
    assert cfg.delta is None


def test_env_accepts_flag_names(tmp_path):
    env = {"KAHLERMIX_OUT": str(tmp_path), "KAHLERMIX_BLOCKS": "4"}
    cfg = resolve_config({}, tmp_path / "absent.yaml", environ=env)
    assert cfg.output_dir == str(tmp_path)
    assert cfg.mc_blocks == 4


def test_config_path_layers(yaml_path):
    env = {"KAHLERMIX_CONFIG": str(yaml_path)}
    assert config_path(None, environ={}) == DEFAULT_CONFIG_PATH
    assert config_path(None, environ=env) == str(yaml_path)
    assert config_path("other.yaml", environ=env) == "other.yaml"


def test_unknown_yaml_keys_are_ignored(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("colour: blue\nseed: 3\n", encoding="utf-8")
    assert resolve_config({}, path, environ={}).seed == 3


@pytest.mark.parametrize(
    "env",
    [
        {"KAHLERMIX_SVG": "maybe"},
        {"KAHLERMIX_N_MAX": "many"},
        {"KAHLERMIX_TOLERANCE": "0"},
        {"KAHLERMIX_PRECISION_BITS": "64"},
        {"KAHLERMIX_SAMPLES": "-1"},
    ],
)
def test_invalid_values(tmp_path, env):
    with pytest.raises(SchemaError):
        resolve_config({}, tmp_path / "absent.yaml", environ=env)


def test_seed_required():
    with pytest.raises(SchemaError):
        RunConfig().require_seed()
    assert RunConfig(seed=0).require_seed() == 0
