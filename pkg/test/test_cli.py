# test/test_cli.py
import json

import pytest

from main import run
from mixing.bounds import DECAYED


@pytest.fixture
def cli(tmp_path, catalog_path):
    """run() against the bundled catalog with an empty config file."""
    config = tmp_path / "none.yaml"

    def invoke(*args, out=None, catalog=None):
        out = out or tmp_path / "out"
        catalog = catalog or catalog_path
        argv = [args[0], "--config", str(config), "--catalog", str(catalog), "--out", str(out)]
        return run(argv + list(args[1:]))

    return invoke


def read(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_help_and_bad_flags():
    assert run(["--help"]) == 0
    assert run(["degrees", "--no-such-flag"]) == 1
    assert run(["mix", "--pair", "nonsense"]) == 1


def test_degrees(cli, tmp_path):
    assert cli("degrees", "--instance", "cat-map") == 0
    data = read(tmp_path / "out" / "degrees.json")
    assert data["schema"] == "v1"
    assert data["profile"]["p"] == 1
    assert data["certificate"]["delta_admissible_interval"][1] == pytest.approx(6.854101966)
    assert data["surface_spectrum"] is True
    assert "hypothesis_failure" not in data


def test_degrees_plateau_exits_two(cli, tmp_path):
    assert cli("degrees", "--instance", "cat-x-elliptic") == 2
    data = read(tmp_path / "out" / "degrees.json")
    assert "no unique peak" in data["hypothesis_failure"]
    assert data["certificate"] is None


def test_degrees_jordan_exits_two(cli, tmp_path):
    assert cli("degrees", "--instance", "toy-jordan") == 2
    data = read(tmp_path / "out" / "degrees.json")
    assert data["certificate"]["delta_admissible_interval"] is None


MALFORMED = [
    {"type": "hodge", "label": "x", "action": {"dim": 2, "blocks": 5}},
    {"type": "hodge", "label": "x", "action": [1, 2]},
    {"type": "hodge", "label": "x", "action": {"dim": 1, "blocks": [{"r": 0, "s": 0, "re": 5}]}},
    {"type": "hodge", "label": "x", "action": {"dim": 1, "blocks": [{"r": 0, "s": 0, "re": [["1"]], "im": 3}]}},
    {"type": "coxeter", "label": "x", "nodes": None, "edges": []},
    {"type": "coxeter", "label": "x", "nodes": 3, "edges": 7},
    {"type": "coxeter", "label": "x", "nodes": 3, "edges": [[0, None]]},
    {"type": "coxeter", "label": "x", "nodes": 2, "edges": [[0, 1]], "order": [5]},
    {"type": "cartesian", "label": "x", "factors": [["a"], "b"]},
]


def test_input_errors_exit_one(cli, tmp_path):
    assert cli("degrees", "--instance", "missing") == 1
    assert cli("degrees") == 1
    broken = tmp_path / "broken.json"
    broken.write_text("[{", encoding="utf-8")
    assert cli("degrees", "--instance", "cat-map", catalog=broken) == 1
    assert cli("degrees", "--instance", "cat-map", catalog=tmp_path / "absent.json") == 1
    for i, entry in enumerate(MALFORMED):
        path = tmp_path / f"malformed-{i}.json"
        path.write_text(json.dumps([entry]), encoding="utf-8")
        assert cli("validate-catalog", catalog=path) == 1, entry


def test_rate(cli, tmp_path):
    assert cli("rate", "--instance", "cat-map", "--n-max", "20") == 0
    data = read(tmp_path / "out" / "rate.json")
    assert data["within_5_percent"] is True
    lines = (tmp_path / "out" / "rate.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "n,error"
    assert len(lines) == 21


def test_config_file_from_environment(tmp_path, catalog_path, monkeypatch):
    config = tmp_path / "env.yaml"
    config.write_text("n_max: 20\n", encoding="utf-8")
    monkeypatch.setenv("KAHLERMIX_CONFIG", str(config))
    out = tmp_path / "env-out"
    argv = ["rate", "--instance", "cat-map", "--catalog", str(catalog_path), "--out", str(out)]
    assert run(argv) == 0
    assert len((out / "rate.csv").read_text(encoding="utf-8").splitlines()) == 21


@pytest.mark.parametrize("label", ["toy-jordan", "cat-x-elliptic", "toy-rot90"])
def test_rate_refusals(cli, label):
    assert cli("rate", "--instance", label, "--n-max", "10") == 2


def test_kunneth(cli, tmp_path):
    assert cli("kunneth", "--instance", "cat-map") == 0
    data = read(tmp_path / "out" / "kunneth.json")
    assert data["dominant_matches"] is True
    assert data["dominant_radius"] == pytest.approx(data["d_p_squared"])
    assert data["bound_violations"] == []
    assert data["preserves_decomposition"] is True
    assert data["others_below_d_p_delta0"] is True


def test_kunneth_needs_full_action(cli):
    assert cli("kunneth", "--instance", "e10-coxeter") == 2


def test_kunneth_on_odd_dimensional_toy(cli, tmp_path):
    assert cli("kunneth", "--instance", "toy-3fold") == 0
    data = read(tmp_path / "out" / "kunneth.json")
    assert data["dominant_radius"] == pytest.approx(16.0)
    assert data["dominant_matches"] is True


def test_validate_catalog(cli, tmp_path):
    assert cli("validate-catalog") == 0
    data = read(tmp_path / "out" / "catalog.json")
    assert len(data["instances"]) == 16


MIX = ["mix", "--instance", "cat-map", "--delta", "2", "--n-max", "8"]


def test_mix_exact_only(cli, tmp_path):
    assert cli(*MIX, "--samples", "0") == 0
    data = read(tmp_path / "out" / "mix.json")
    assert data["holds"] is True
    assert data["note"] == DECAYED
    assert data["base"] == pytest.approx(1.8512, abs=1e-4)
    assert "montecarlo" not in data


def test_mix_power_law_pair(cli, tmp_path):
    args = ["mix", "--instance", "cat-map", "--pair", "power-law", "--beta", "2",
            "--beta-prime", "2", "--delta", "2", "--radius", "3", "--n-max", "30",
            "--samples", "0", "--seed", "1"]
    assert cli(*args) == 0
    data = read(tmp_path / "out" / "mix.json")
    assert data["pair"] == "power-law"
    assert data["holds"] is True
    assert data["n_max"] == 30
    assert data["base"] == pytest.approx(1.8512, abs=1e-4)
    assert isinstance(data["fitted_A_even"], float)
    assert isinstance(data["fitted_A_odd"], float)


def test_mix_is_deterministic(cli, tmp_path):
    args = MIX + ["--samples", "2000", "--seed", "3", "--pair", "transported-pair", "--svg"]
    assert cli(*args, out=tmp_path / "a") == 0
    assert cli(*args, out=tmp_path / "b") == 0
    for name in ("mix.json", "mix.csv", "mix.svg"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    data = read(tmp_path / "a" / "mix.json")
    assert data["montecarlo"]["seed"] == 3
    assert data["montecarlo"]["precision_horizon"] == 31


def test_mix_refusals(cli):
    assert cli("mix", "--instance", "cat-map", "--samples", "0") == 1
    assert cli(*MIX, "--samples", "2000") == 1
    assert cli("mix", "--instance", "cat-map", "--delta", "9", "--samples", "0") == 2
    assert cli("mix", "--instance", "shear", "--delta", "2", "--samples", "0") == 2
    assert cli("mix", "--instance", "toy-43", "--delta", "3.5", "--samples", "0") == 2
