"""
Settings and configuration management using Pydantic BaseSettings.
Environment variables (and an optional .env file) override the defaults.
"""
from typing import Optional

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # ── Algebra ──
    tl_max_level: int = 6  # spectral product cutoff, env TL_MAX_LEVEL
    tl_default_domain: str = "symbolic"
    tl_float_eps: float = 1e-9
    tl_gram_max_strands: int = 10
    tl_symbolic_sample_lambda: int = 3  # rational λ used for sign decisions in symbolic mode

    # ── Verification Performance ──
    max_workers: int = 4

    # ── Logging ──
    log_dir: Optional[str] = None

    # ── Webhooks ──
    webhook_attempts: int = 3

    # ── API Security ──
    api_secret_key: Optional[str] = None  # unauthenticated when unset

    # ── Uvicorn Server ──
    api_host: str = "0.0.0.0"
    api_port: int = 8000

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "case_sensitive": False,
    }


_settings: Settings | None = None


def get_settings() -> Settings:
    """Return a cached Settings instance (loads from .env on first call)."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings
