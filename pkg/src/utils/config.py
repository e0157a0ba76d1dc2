"""
utils/config.py

Runtime configuration for LeafSpace.

Settings are read from LEAFSPACE_* environment variables (a local `.env` file is honoured
through python-dotenv). Random-sampling ranges live in `cli/sampling.json`; when that file is
missing or malformed the built-in defaults are used and the problem is logged.

Functions:
- load_settings: Builds a Settings object from the environment.
- load_sampling_config: Loads the sampling ranges from JSON.
"""

import json
import logging
import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

SAMPLING_CONFIG_PATH = os.path.join(os.path.dirname(__file__), "..", "cli", "sampling.json")


class Settings(BaseModel):
    tol: float = Field(1e-9, gt=0)
    samples: int = Field(100, ge=1)
    seed: int = 0
    workers: int = Field(4, ge=1)
    log_level: str = "WARNING"


class SamplingConfig(BaseModel):
    berger_ranges: dict = Field(default_factory=lambda: {"lambda": [0.2, 5.0], "other": [-2.0, 2.0]})
    unit_lambda_every: int = Field(10, ge=1)
    reframings: int = Field(50, ge=1)
    frame_rotations: int = Field(20, ge=1)


def load_settings() -> Settings:
    """
    Reads LEAFSPACE_TOL, LEAFSPACE_SAMPLES, LEAFSPACE_SEED, LEAFSPACE_WORKERS and LEAFSPACE_LOG_LEVEL.
    Invalid values are logged and replaced by the defaults.
    """
    load_dotenv()
    values = {}
    for name in Settings.model_fields:
        raw = os.getenv(f"LEAFSPACE_{name.upper()}")
        if raw is not None:
            values[name] = raw
    try:
        return Settings(**values)
    except ValidationError as e:
        logging.error(f"Invalid LEAFSPACE settings, using defaults: {e}")
        return Settings()


def load_sampling_config(file_path=SAMPLING_CONFIG_PATH) -> SamplingConfig:
    try:
        with open(file_path, "r") as file:
            config = SamplingConfig(**json.load(file))
            logging.debug(f"Sampling configuration loaded from {file_path}.")
            return config
    except FileNotFoundError:
        logging.warning(f"Sampling configuration not found at {file_path}; using defaults.")
    except (json.JSONDecodeError, ValidationError) as e:
        logging.error(f"Malformed sampling configuration in {file_path}: {e}")
    return SamplingConfig()
