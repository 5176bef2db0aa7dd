"""
Application configuration using Pydantic settings.
"""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Atlas settings loaded from ATLAS_* environment variables or a .env file."""

    # Sampling
    SEED: int = 1729
    SAMPLES: int = 200
    JORDAN_SAMPLES: int = 100
    JACOBI_SAMPLES: int = 2000
    RANDOM_COEFFICIENT_BOUND: int = 5

    # Jacobi verification
    EXHAUSTIVE_JACOBI_MAX_DIM: int = 35

    # Rank witness
    RANK_TRIALS: int = 2
    RANK_PRIME: int = 2147483647

    # Figures
    SVG_SCALE: int = 100

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"

    model_config = SettingsConfigDict(
        env_prefix="ATLAS_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )


# Global settings instance
settings = Settings()
