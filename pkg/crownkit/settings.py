#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

import logging
import os

from flask import Config
from flask.logging import default_handler

DEFAULTS = dict(
    LOG_LEVEL="WARNING",
    ELEMENT_CAP=200_000,
    INTERVAL_CAP=100_000,
    ISO_SEARCH_CAP=10_000,
    INTERTWINER_CAP=2**20,
    DEGREE_CAP=256,
    SCOPE_ALL_ORDER=100,
    SCOPE_CONJUGACY_ORDER=200,
    SOTTO_SCAN_ORDER=100,
    SOTTO_SAMPLES=64,
    LEMMA_SAMPLES=12,
    LEMMA_MAX_ORDER=120,
    SAMPLE_SEED=0,
    STREAMING_CAP=250_000,
    RATIO_BASELINE=None,
    JOBS=1,
)

config = Config(os.path.dirname(os.path.abspath(__file__)))
logger = logging.getLogger("crownkit")


def load_config():
    """
    Reset the configuration to the defaults, then apply the settings file
    named by CROWNKIT_SETTINGS and any CROWNKIT_* environment variables.
    """
    config.clear()
    config.update(DEFAULTS)
    config.from_envvar("CROWNKIT_SETTINGS", silent=True)
    # CROWNKIT_ELEMENT_CAP=5000 arrives as an int, values are parsed as json
    config.from_prefixed_env("CROWNKIT")
    return config


def configure_logging():
    if default_handler not in logger.handlers:
        logger.addHandler(default_handler)
    logger.setLevel(config["LOG_LEVEL"])
    return logger


load_config()
