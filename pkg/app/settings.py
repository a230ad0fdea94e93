from pathlib import Path

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

ENV_PATH = Path(__file__).resolve().parent.parent / ".env"
if ENV_PATH.exists():
    load_dotenv(ENV_PATH, override=False)


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="LEECH_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # Series / certification
    TRUNCATION_ORDER: int = Field(default=60, ge=10)
    TAIL_BUDGET_EXPONENT: int = Field(default=50)
    TAIL_NORMALIZE_HALF_STEPS: int = Field(default=12)
    PI_SCALE_DIGITS: int = Field(default=10)
    T_BOUND_DENOMINATOR: int = Field(default=23)
    MAX_WINDOW_DEPTH: int = Field(default=8)
    ENDPOINT_EPSILON_EXPONENT: int = Field(default=20)
    TAIL_PARTIAL_TERMS: int = Field(default=200)

    # Evaluation
    EVAL_DIGITS: int = Field(default=30, ge=10)
    GUARD_DIGITS: int = Field(default=15)
    NEAR_POLE_THRESHOLD: float = Field(default=1e-3)
    ORACLE_DIGITS: int = Field(default=20)
    ORACLE_TOLERANCE: float = Field(default=1e-6)
    ORACLE_RADIUS: float = Field(default=8.0)
    ORACLE_PANEL_NODES: int = Field(default=24)

    # Output / execution
    OUTPUT_FORMAT: str = Field(default="json")
    JOBS: int = Field(default=1, ge=1)

    # Logging
    DEBUG: bool = Field(default=False)
    LOG_LEVEL: str = Field(default="INFO")
    LOG_TO_FILE: bool = Field(default=False)

    # Cache
    CACHE_ENABLED: bool = Field(default=True)

    # Paths
    PROJECT_ROOT: Path = Path(__file__).parent.parent
    LOGS_DIR: Path = PROJECT_ROOT / "logs"
    CACHE_DIR: Path = PROJECT_ROOT / ".cache" / "catalogs"


settings = Settings()
