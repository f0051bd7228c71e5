import os
import json
import logging
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, model_validator

from utils.errors import UsageError

logger = logging.getLogger(__name__)

# Load environment variables from .env file (e.g., SRDIST_LOG_LEVEL)
load_dotenv()

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir))
ORACLE_CONFIG_DIR = os.path.join(PROJECT_ROOT, 'oracle_configs')


class GridSpec(BaseModel):
    """Shooting-oracle grid: sizes, beta window, refinement and tolerances."""

    model_config = {"frozen": True}

    n_phi: int = Field(256, ge=64)
    n_beta: int = Field(256, ge=64)
    beta_max: float = Field(8.0, ge=8.0)
    n_t: int = Field(512, ge=64)
    refine_steps: int = Field(60, ge=1)
    match_tol: float = Field(1e-3, gt=0)
    time_tol: float = Field(2e-2, gt=0)
    capture_tol: float = Field(0.5, gt=0)
    max_candidates: int = Field(256, ge=1)
    dedup_radius: float = Field(0.1, gt=0)

    @model_validator(mode='after')
    def _check_tolerances(self):
        if self.capture_tol < self.match_tol:
            raise ValueError("capture_tol must not be smaller than match_tol")
        return self

    def doubled(self) -> "GridSpec":
        return self.model_copy(update={
            'n_phi': 2 * self.n_phi,
            'n_beta': 2 * self.n_beta,
            'n_t': 2 * self.n_t,
        })


class Settings(BaseModel):
    log_level: str = 'WARNING'
    oracle_preset: str = 'default'
    workers: int = Field(1, ge=1)


def load_settings() -> Settings:
    """Reads SRDIST_* environment variables (after .env has been loaded)."""
    try:
        return Settings(
            log_level=os.getenv('SRDIST_LOG_LEVEL', 'WARNING').upper(),
            oracle_preset=os.getenv('SRDIST_ORACLE_PRESET', 'default'),
            workers=int(os.getenv('SRDIST_WORKERS', '1')),
        )
    except (ValidationError, ValueError) as e:
        raise UsageError(f"Error: invalid SRDIST_* environment configuration: {e}") from e


def available_presets() -> list[str]:
    if not os.path.isdir(ORACLE_CONFIG_DIR):
        return []
    return sorted(
        name for name in os.listdir(ORACLE_CONFIG_DIR)
        if os.path.isfile(os.path.join(ORACLE_CONFIG_DIR, name, 'config.json'))
    )


def load_grid_preset(name: str) -> GridSpec:
    """Loads oracle_configs/<name>/config.json into a validated GridSpec."""
    config_path = os.path.join(ORACLE_CONFIG_DIR, name, 'config.json')
    if not os.path.exists(config_path):
        raise UsageError(
            f"Error: unknown oracle preset '{name}'. Available presets: {', '.join(available_presets())}")

    with open(config_path, 'r', encoding='utf-8') as f:
        raw = json.load(f)
    try:
        grid = GridSpec(**raw['grid'])
    except (KeyError, ValidationError) as e:
        raise UsageError(f"Error: preset '{name}' is malformed: {e}") from e

    logger.debug(f"Loaded oracle preset '{name}': {grid}")
    return grid
