"""Configuration management for RepType.

Every enumeration in the kernels is exponential, so the caps below are the
knobs that keep desk-scale runs bounded. All values can be overridden from the
environment or a ``.env`` file.
"""

from pathlib import Path
from typing import Literal, Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


# Resolve project root relative to this file: src/reptype/core/config.py -> project root
_PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent.parent


class Settings(BaseSettings):
    """Application settings."""

    # Application info
    app_name: str = "RepType"
    app_version: str = "0.3.0"
    debug: bool = False

    # API settings
    api_host: str = "0.0.0.0"
    api_port: int = 8000
    api_reload: bool = False

    # Paths
    project_root: Path = _PROJECT_ROOT
    config_dir: Path = _PROJECT_ROOT / "config"
    critical_config_dir: Path = _PROJECT_ROOT / "config" / "critical"
    graphs_config_dir: Path = _PROJECT_ROOT / "config" / "graphs"

    # Enumeration caps
    max_relation_size: int = 20
    max_poset_size: int = 20
    max_enumeration_size: int = 7
    max_dyadic_points: int = 8
    max_graph_vertices: int = 16
    max_bordering_points: int = 12

    # Certified cosine enclosures: one extra bit per refinement step
    cos_base_precision: int = 53
    cos_refinement_steps: int = 128

    # Dyadic set semantics
    edge_order: Literal["containment", "literal"] = "containment"
    condition_a_scope: Literal["all", "long"] = "all"
    condition_c_motif: Literal["ordered", "strict"] = "ordered"

    # Numeric oracle
    numeric_grid_depth: int = 12
    numeric_max_iterations: int = 5000

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # CORS (for development)
    cors_origins: list[str] = ["http://localhost:5173", "http://localhost:3000"]

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get settings instance (FastAPI dependency-injection compatible)."""
    return settings
