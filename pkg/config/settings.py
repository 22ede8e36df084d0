# Configuration settings for Ramsey Lab

from pydantic_settings import BaseSettings, SettingsConfigDict


# Application Settings
APP_TITLE = "Ramsey Lab"
VERSION = "0.1.0"


class Settings(BaseSettings):
    """
    Runtime settings, overridable through RAMSEY_LAB_* environment variables
    or a local .env file.
    """

    model_config = SettingsConfigDict(
        env_prefix='RAMSEY_LAB_',
        env_file='.env',
        extra='ignore'
    )

    # Worker pool size; the CLI --jobs flag falls back to this (RAMSEY_LAB_JOBS)
    jobs: int = 1

    # Representation caps
    search_order_cap: int = 64
    construction_order_cap: int = 4096
    spectrum_order_cap: int = 16

    # Exhaustive generation guard (a default, overridable with --allow-large)
    exhaustive_order_guard: int = 12
    split_order: int = 6

    # Star-cycle decomposition: largest cut set tried by the brute-force search
    star_cycle_max_cut: int = 6

    # Stochastic witness search budget
    stochastic_flips: int = 20000
    stochastic_restarts: int = 8

    log_level: str = "WARNING"
    progress: bool = False
    report_schema_version: int = 1


settings = Settings()
