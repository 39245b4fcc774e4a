"""
Configuration Settings for qwalgebra
Loads environment variables and provides centralized session defaults
"""

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """
    Session defaults loaded from environment variables.

    Environment variables may be defined in a .env file:
    - Rank and backend mode
    - Probe prime, repetitions and seed
    - Verification windows and series orders
    - Parallelism and output formatting
    """

    # Algebra
    RANK: int = 1
    MODE: str = "probe"  # "probe" or "exact"

    # Probe backend (Schwartz-Zippel evaluation)
    PROBE_PRIME: int = 2**61 - 1
    PROBE_REPETITIONS: int = 3
    SEED: int = 0

    # Verification windows
    MAX_STATE_SIZE: int = 2
    SHUFFLE_VARIABLE_CAP: int = 6
    SERIES_ORDER: int = 8  # truncation order of t/ybar series
    EPS_ORDER: int = 8  # relative precision of eps-series
    TRUNCATION_MARGIN: int = 1  # extra coefficients verified past the numerator degree
    BIDEGREE_RADIUS: int = 2

    # Execution
    WORKERS: int = 1
    JSON_INDENT: int = 0
    SCHEMA_VERSION: str = "1.0"
    LOG_LEVEL: str = "WARNING"

    class Config:
        env_file = ".env"
        case_sensitive = True


# Global settings instance
settings = Settings()
