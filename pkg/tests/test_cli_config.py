"""Experiment config loading, overrides and effective-config round-trips."""
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path

import pytest

from apps.cli.config import (
    ExperimentConfig,
    Settings,
    apply_overrides,
    load_experiment,
    parse_overrides,
)
from packages.benchmark.variants import AlgorithmVariant
from packages.optimizer.exceptions import ConfigError
from packages.queue_sim.model import WaitMode


def write(tmp_path, text: str):
    path = tmp_path / "experiment.toml"
    path.write_text(text, encoding="utf-8")
    return path


def test_defaults():
    config = load_experiment()
    assert config.seed == 2024
    assert config.queue.k == 3
    assert config.queue.arrival_rate == 2.5
    assert config.teso.budget == 300
    assert config.suite.n_macro == 30
    assert config.suite.algorithms == list(AlgorithmVariant)


def test_file_values(tmp_path):
    path = write(tmp_path, "[queue]\nlambda = 2.0\nwait_mode = \"sojourn\"\n\n[teso]\nn_rep = 10\n")
    config = load_experiment(path)
    assert config.queue.arrival_rate == 2.0
    assert config.queue.wait_mode is WaitMode.SOJOURN
    assert config.teso.n_rep == 10
    assert config.teso.budget == 300


def test_overrides_beat_file(tmp_path):
    path = write(tmp_path, "[teso]\nn_rep = 10\n")
    config = load_experiment(path, parse_overrides(["teso.n_rep=12", "suite.n_macro=2"]))
    assert config.teso.n_rep == 12
    assert config.suite.n_macro == 2


def test_unknown_key_reports_line(tmp_path):
    path = write(tmp_path, "[teso]\nn_rep = 10\ntabu_size = 4\n")
    with pytest.raises(ConfigError) as exc:
        load_experiment(path)
    assert f"{path}:3" in exc.value.message
    assert "tabu_size" in exc.value.message
    assert exc.value.exit_code == 2


def test_unstable_queue_is_rejected(tmp_path):
    path = write(tmp_path, "[queue]\nmu_lower = 0.8\n")
    with pytest.raises(ConfigError, match="Stability rule"):
        load_experiment(path)


def test_cross_field_invariant(tmp_path):
    path = write(tmp_path, "[teso]\nn_rep = 3\npilot_reps = 5\n")
    with pytest.raises(ConfigError, match="pilot_reps"):
        load_experiment(path)


def test_malformed_toml(tmp_path):
    path = write(tmp_path, "[teso\nn_rep = 3\n")
    with pytest.raises(ConfigError, match="malformed"):
        load_experiment(path)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="Cannot read"):
        load_experiment(tmp_path / "missing.toml")


@pytest.mark.parametrize("raw", ["n_rep=3", "teso=3", "a.b.c=1", ".n_rep=2"])
def test_bad_override_syntax(raw):
    with pytest.raises(ConfigError):
        parse_overrides([raw])


def test_override_values_are_typed():
    overrides = parse_overrides(
        ["teso.p_div=0.5", "queue.wait_mode=sojourn", "teso.disable_tabu=true"]
    )
    assert overrides == {"teso.p_div": 0.5, "queue.wait_mode": "sojourn", "teso.disable_tabu": True}


def test_apply_overrides_leaves_input_untouched():
    data = {"teso": {"n_rep": 3}}
    merged = apply_overrides(data, {"teso.n_rep": 4, "queue.k": 2})
    assert data == {"teso": {"n_rep": 3}}
    assert merged == {"teso": {"n_rep": 4}, "queue": {"k": 2}}


def test_effective_config_round_trip(tmp_path):
    original = load_experiment(
        None,
        parse_overrides([
            "queue.wait_mode=sojourn",
            "teso.eta_init=0.3",
            "suite.algorithms=[\"prs\", \"teso\"]",
            f"suite.output_dir=\"{tmp_path}\"",
        ]),
    )
    text = original.dump_toml()
    assert tomllib.loads(text)["queue"]["lambda"] == 2.5
    path = write(tmp_path, text)
    assert load_experiment(path) == original


def test_dump_materialises_defaults():
    data = tomllib.loads(ExperimentConfig().dump_toml())
    assert data["teso"]["budget"] == 300
    assert data["teso"]["base_seed"] == 2024
    assert data["queue"]["customers_per_rep"] == 2000
    assert "output_dir" not in data["suite"]


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("TESO_JOBS", "4")
    monkeypatch.setenv("TESO_LOG_LEVEL", "DEBUG")
    settings = Settings()
    assert settings.jobs == 4
    assert settings.log_level == "DEBUG"


def test_shipped_configs_load():
    configs = Path(__file__).parent.parent / "configs"
    assert load_experiment(configs / "default.toml") == ExperimentConfig()
    assert load_experiment(configs / "smoke.toml").suite.n_macro == 2
