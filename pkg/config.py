#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
CycleKit Configuration

Loads config.yaml into validated settings:
- pydantic models for every section
- YAML parsing with pyyaml
- environment overrides through python-dotenv (CYCLEKIT_*)
- a module-level singleton accessor, get_settings()
- logging setup shared by the command-line tools
"""

import os
import logging
from pathlib import Path
from typing import Dict, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from errors import CycleKitError

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent / "config.yaml"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger('CycleKit.Config')


class ApplicationSettings(BaseModel):
    name: str = "cyclekit"
    description: str = ""
    environment: str = "development"


class NumericsSettings(BaseModel):
    """Finite-difference and jet-spectrum tolerances passed through by the command line."""
    fd_step: float = 1e-4
    fd_confirm_step: float = 1e-5
    perpendicular_tol: float = 1e-6
    jet_cluster_tol: float = 1e-3
    jet_rank_tol: float = 1e-8
    max_matrix_order: int = Field(default=64, ge=1)


class PatchSettings(BaseModel):
    xmin: float = -2.0
    xmax: float = 2.0
    ymin: float = 0.1
    ymax: float = 4.1
    points: int = Field(default=129, ge=5)


class AnalyticSettings(BaseModel):
    grid_size: int = Field(default=1024, ge=16)
    patch: PatchSettings = PatchSettings()


class VerificationSettings(BaseModel):
    seed: int = 2008
    samples: Dict[str, int] = Field(default_factory=lambda: {
        "moebius": 1000,
        "fscc": 500,
        "orthogonality": 1000,
        "ghosts": 200,
        "metric": 100,
        "spectrum": 50,
        "analytic": 20,
    })


class RenderSettings(BaseModel):
    precision: int = Field(default=6, ge=1, le=12)
    samples_per_curve: int = Field(default=256, ge=32)


class LoggingSettings(BaseModel):
    level: str = "info"
    file: Optional[str] = None


class CycleKitSettings(BaseModel):
    """The whole config.yaml document."""
    version: str = "1.0"
    application: ApplicationSettings = ApplicationSettings()
    numerics: NumericsSettings = NumericsSettings()
    analytic: AnalyticSettings = AnalyticSettings()
    verification: VerificationSettings = VerificationSettings()
    render: RenderSettings = RenderSettings()
    logging: LoggingSettings = LoggingSettings()


class ConfigError(CycleKitError):
    """config.yaml could not be read or failed validation."""


def load_settings(path: Optional[str] = None) -> CycleKitSettings:
    """
    Read settings from a YAML file and apply environment overrides.

    Args:
        path: Config file; defaults to $CYCLEKIT_CONFIG, then the bundled config.yaml

    Returns:
        CycleKitSettings: validated settings
    """
    load_dotenv()
    config_path = Path(path or os.environ.get("CYCLEKIT_CONFIG") or DEFAULT_CONFIG_PATH)

    data = {}
    if config_path.exists():
        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"Cannot parse {config_path}: {str(e)}") from e
    else:
        logger.warning(f"Config file {config_path} not found, using defaults")

    try:
        settings = CycleKitSettings.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration in {config_path}: {str(e)}") from e

    if os.environ.get("CYCLEKIT_LOG_LEVEL"):
        settings.logging.level = os.environ["CYCLEKIT_LOG_LEVEL"]
    if os.environ.get("CYCLEKIT_LOG_FILE"):
        settings.logging.file = os.environ["CYCLEKIT_LOG_FILE"]
    if os.environ.get("CYCLEKIT_SEED"):
        try:
            settings.verification.seed = int(os.environ["CYCLEKIT_SEED"])
        except ValueError:
            logger.warning(f"Ignoring non-integer CYCLEKIT_SEED={os.environ['CYCLEKIT_SEED']}")

    return settings


_settings: Optional[CycleKitSettings] = None


def get_settings() -> CycleKitSettings:
    """Get the process-wide settings, loading them on first use."""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def reset_settings() -> None:
    """Forget cached settings so the next get_settings() reloads them."""
    global _settings
    _settings = None


def setup_logging(level: str = "info", log_file: Optional[str] = None) -> None:
    """Configure logging to the console and, optionally, a file."""
    handlers = [logging.StreamHandler()]
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file, mode='a', encoding='utf-8'))

    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )


def init_settings(path: Optional[str] = None) -> CycleKitSettings:
    """Load settings from path and make them the process-wide settings."""
    global _settings
    _settings = load_settings(path)
    return _settings
