#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

import logging

from flask.logging import default_handler

from crownkit.settings import (
    DEFAULTS,
    config,
    configure_logging,
    load_config,
    logger,
)


def test_defaults():
    for key, value in DEFAULTS.items():
        assert config[key] == value
    assert config["ELEMENT_CAP"] == 200_000
    assert config["JOBS"] == 1


def test_settings_file(tmpdir, monkeypatch):
    settings_cfg = str(tmpdir.join("settings.cfg"))
    with open(settings_cfg, "w") as f:
        f.writelines(
            [
                "ELEMENT_CAP = 5000\n",
                "LOG_LEVEL = 'DEBUG'\n",
                "RATIO_BASELINE = '/tmp/baseline.yaml'\n",
            ]
        )
    monkeypatch.setenv("CROWNKIT_SETTINGS", settings_cfg)
    load_config()
    assert config["ELEMENT_CAP"] == 5000
    assert config["LOG_LEVEL"] == "DEBUG"
    assert config["RATIO_BASELINE"] == "/tmp/baseline.yaml"
    assert config["INTERVAL_CAP"] == DEFAULTS["INTERVAL_CAP"]


def test_environment_overrides_settings_file(tmpdir, monkeypatch):
    settings_cfg = str(tmpdir.join("settings.cfg"))
    with open(settings_cfg, "w") as f:
        f.write("ELEMENT_CAP = 5000\n")
    monkeypatch.setenv("CROWNKIT_SETTINGS", settings_cfg)
    monkeypatch.setenv("CROWNKIT_ELEMENT_CAP", "7000")
    monkeypatch.setenv("CROWNKIT_LOG_LEVEL", "INFO")
    load_config()
    assert config["ELEMENT_CAP"] == 7000
    assert config["LOG_LEVEL"] == "INFO"


def test_load_config_resets(config):
    config["ELEMENT_CAP"] = 1
    load_config()
    assert config["ELEMENT_CAP"] == DEFAULTS["ELEMENT_CAP"]


def test_configure_logging(config):
    config["LOG_LEVEL"] = "DEBUG"
    assert configure_logging() is logger
    assert logger.level == logging.DEBUG
    assert default_handler in logger.handlers
    configure_logging()
    assert logger.handlers.count(default_handler) == 1
    config["LOG_LEVEL"] = "WARNING"
    configure_logging()
    assert logger.level == logging.WARNING
