"""Tests for config.py — settings file loading and parameter fallback."""

import json
import logging

import pytest

from graded_goldie.config import PARAMETER_DEFAULTS, load_settings, resolve_parameter, resolve_parameters
from graded_goldie.constants import CONFIG_PATH_ENV, DEFAULT_MAX_DEGREE
from graded_goldie.exceptions import ConfigError


def _write(tmp_path, data, name="settings.json"):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


class TestLoadSettings:
    def test_no_file(self, monkeypatch):
        monkeypatch.delenv(CONFIG_PATH_ENV, raising=False)
        assert load_settings() == {"defaults": {}, "suites": {}}

    def test_reads_file(self, tmp_path):
        path = _write(tmp_path, {"defaults": {"seed": 7}, "suites": {"counterexample": {"max_degree": 3}}})
        settings = load_settings(path)
        assert settings["defaults"] == {"seed": 7}
        assert settings["suites"]["counterexample"] == {"max_degree": 3}

    def test_env_var_path(self, tmp_path, monkeypatch):
        monkeypatch.setenv(CONFIG_PATH_ENV, _write(tmp_path, {"defaults": {"samples": 5}}))
        assert load_settings()["defaults"] == {"samples": 5}

    def test_unknown_keys_are_ignored_with_warning(self, tmp_path, caplog):
        path = _write(tmp_path, {"defaults": {"seed": 1, "colour": "red"}, "extra": True})
        with caplog.at_level(logging.WARNING, logger="graded_goldie.config"):
            settings = load_settings(path)
        assert settings["defaults"] == {"seed": 1}
        assert "colour" in caplog.text
        assert "extra" in caplog.text

    def test_bad_json(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_settings(_write(tmp_path, "{not json"))

    def test_not_an_object(self, tmp_path):
        with pytest.raises(ConfigError, match="JSON object"):
            load_settings(_write(tmp_path, [1, 2]))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_settings(str(tmp_path / "absent.json"))

    def test_suite_section_must_be_object(self, tmp_path):
        with pytest.raises(ConfigError, match="suites.phi"):
            load_settings(_write(tmp_path, {"suites": {"phi": 3}}))


class TestResolveParameter:
    SETTINGS = {"defaults": {"max_degree": 4}, "suites": {"phi": {"max_degree": 5}}}

    def test_cli_wins(self):
        assert resolve_parameter("max_degree", 2, "phi", self.SETTINGS) == 2

    def test_suite_entry(self):
        assert resolve_parameter("max_degree", None, "phi", self.SETTINGS) == 5

    def test_defaults_entry(self):
        assert resolve_parameter("max_degree", None, "counterexample", self.SETTINGS) == 4

    def test_builtin(self):
        assert resolve_parameter("max_degree", None, "phi", {"defaults": {}, "suites": {}}) == DEFAULT_MAX_DEGREE

    @pytest.mark.parametrize("value", [0, -3, True, "5"])
    def test_rejects_non_positive_bounds(self, value):
        with pytest.raises(ConfigError, match="positive integer"):
            resolve_parameter("n_max", value, "star", {"defaults": {}, "suites": {}})

    def test_seed_must_be_integer(self):
        with pytest.raises(ConfigError, match="seed"):
            resolve_parameter("seed", None, "star", {"defaults": {"seed": "x"}, "suites": {}})

    def test_samples_default_is_unset(self, parameters):
        assert parameters("phi")["samples"] is None


class TestResolveParameters:
    def test_covers_every_parameter(self, parameters):
        resolved = parameters("counterexample", group="d-infty", samples=3)
        assert set(resolved) == set(PARAMETER_DEFAULTS)
        assert resolved["group"] == "d-infty"
        assert resolved["samples"] == 3

    def test_settings_feed_every_suite(self):
        settings = {"defaults": {"field": "fp:7"}, "suites": {}}
        assert resolve_parameters("bazhenov", {}, settings)["field"] == "fp:7"
