"""Unit tests for ConfigManager, environment settings and logging setup."""

import json
import logging
import os
from pathlib import Path

import pytest

from cadist.cli.config import ConfigManager, RunConfig, Settings, load_settings
from cadist.exceptions import ConfigurationError
from cadist.logging_config import (
    TEXT_FORMAT,
    ContextTextFormatter,
    CustomJsonFormatter,
    configure_from_env,
    setup_logging,
)


@pytest.fixture
def temp_config(tmp_path):
    """Fixture for temporary config file path."""
    return tmp_path / "config.json"


@pytest.fixture(autouse=True)
def restore_logging():
    """Put the root logger back after tests that reconfigure it."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def test_defaults_without_file():
    """Test that no config file gives the defaults."""
    cm = ConfigManager()
    assert cm.config == RunConfig()
    assert cm.config.out_dir == Path("cadist-out")
    assert cm.config.depth == 8


def test_flags_override_file(temp_config):
    """Test that given flags win over file values and missing flags do not."""
    temp_config.write_text(json.dumps({"structure": "Z-unary", "n": 10, "seed": 3}))
    cm = ConfigManager(config_path=temp_config)
    config = cm.merge({"subcommand": "hfun", "n": 6, "seed": None, "check_length": True})
    assert config.structure == "Z-unary"
    assert config.n == 6
    assert config.seed == 3
    assert config.options == {"check_length": True}


def test_missing_config_file(tmp_path):
    """Test that a missing file is a configuration error."""
    with pytest.raises(ConfigurationError):
        ConfigManager(config_path=tmp_path / "nope.json")


def test_invalid_config_file(temp_config):
    """Test malformed JSON and invalid values."""
    temp_config.write_text("{not json")
    with pytest.raises(ConfigurationError):
        ConfigManager(config_path=temp_config)
    temp_config.write_text(json.dumps({"depth": 0}))
    with pytest.raises(ConfigurationError):
        ConfigManager(config_path=temp_config)


def test_invalid_override():
    """Test that a bad flag value is reported as a configuration error."""
    with pytest.raises(ConfigurationError):
        ConfigManager().merge({"workers": 0})


def test_digest_ignores_workers_and_out_dir():
    """Test that the digest only covers fields that change artifacts."""
    base = RunConfig(subcommand="hfun", structure="Z-unary", n=8)
    assert base.digest() == base.model_copy(update={"workers": 8}).digest()
    assert base.digest() == base.model_copy(update={"out_dir": Path("/tmp/x")}).digest()
    assert base.digest() != base.model_copy(update={"n": 9}).digest()


def test_save_round_trip(temp_config):
    """Test that a saved config loads back equal."""
    cm = ConfigManager()
    cm.merge({"subcommand": "verify", "structure": "LL2", "depth": 5})
    cm.save(temp_config)
    assert ConfigManager(config_path=temp_config).config == cm.config


def test_budget_setting(mocker):
    """Test that CADIST_BUDGET_MB caps the word and element budgets."""
    mocker.patch.dict(os.environ, {"CADIST_BUDGET_MB": "1"})
    settings = load_settings()
    assert settings.budget_mb == 1
    assert settings.cap_words(10**9) == 2**20 // 512
    assert settings.cap_elements(10) == 10


def test_no_budget_setting(mocker):
    """Test that requests pass through without a budget."""
    mocker.patch.dict(os.environ, {}, clear=True)
    assert Settings().cap_words(123) == 123


def test_invalid_budget_setting(mocker):
    """Test that a bad environment value is a configuration error."""
    mocker.patch.dict(os.environ, {"CADIST_BUDGET_MB": "-4"})
    with pytest.raises(ConfigurationError):
        load_settings()


def test_json_formatter_adds_context():
    """Test level, logger and run context in JSON log lines."""
    formatter = CustomJsonFormatter("%(timestamp)s %(level)s %(logger)s %(message)s")
    record = logging.LogRecord("cadist.test", logging.INFO, __file__, 1, "built", None, None)
    record.structure = "LL2"
    data = json.loads(formatter.format(record))
    assert data["level"] == "INFO"
    assert data["logger"] == "cadist.test"
    assert data["structure"] == "LL2"
    assert data["message"] == "built"


def test_setup_logging_file(tmp_path):
    """Test that a log file receives records at the configured level."""
    log_file = tmp_path / "cadist.log"
    setup_logging(level="INFO", json_format=True, log_file=str(log_file))
    logging.getLogger("cadist.test").info("hello", extra={"subcommand": "hfun"})
    for handler in logging.getLogger().handlers:
        handler.flush()
    line = json.loads(log_file.read_text().splitlines()[-1])
    assert line["message"] == "hello"
    assert line["subcommand"] == "hfun"


def test_configure_from_env(mocker):
    """Test the CADIST_LOG_* environment variables."""
    mocker.patch.dict(os.environ, {"CADIST_LOG_LEVEL": "DEBUG", "CADIST_LOG_FORMAT": "json"})
    configure_from_env()
    root = logging.getLogger()
    assert root.level == logging.DEBUG
    assert isinstance(root.handlers[0].formatter, CustomJsonFormatter)


def test_text_formatter_appends_context():
    """Test that human-readable lines carry the run context."""
    formatter = ContextTextFormatter(TEXT_FORMAT)
    record = logging.LogRecord("cadist.test", logging.INFO, __file__, 1, "built", None, None)
    assert formatter.format(record).endswith("built")
    record.structure = "LL2"
    record.subcommand = "fill"
    assert formatter.format(record).endswith("built [structure=LL2 subcommand=fill]")


def test_invalid_log_settings(mocker):
    """Test that unknown levels and formats are configuration errors."""
    with pytest.raises(ConfigurationError):
        setup_logging(level="LOUD")
    mocker.patch.dict(os.environ, {"CADIST_LOG_FORMAT": "xml"})
    with pytest.raises(ConfigurationError):
        configure_from_env()
