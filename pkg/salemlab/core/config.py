import os
from typing import Optional

import psutil
from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


def _default_threads() -> int:
    return psutil.cpu_count(logical=True) or os.cpu_count() or 1


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        case_sensitive=True, env_file=".env", env_prefix="SALEMLAB_", extra="ignore"
    )

    PROJECT_NAME: str = "salemlab"
    LOG_LEVEL: str = "INFO"

    # Parallel scans
    THREADS: int = _default_threads()
    SCAN_CHUNK: int = 256

    # Construction
    RETRY_CAP: int = 64
    K_MAX_FLOOR: int = 4096
    ZETA_PARTIAL_TERMS: int = 10**6

    # Envelope g and the phi scan
    ENVELOPE_T_MAX: float = 1e3
    ENVELOPE_POINTS_PER_DECADE: int = 64
    PHI_SCAN_MAX: float = 256.0
    PHI_SCAN_POINTS: int = 4097

    # Decay fitting
    DECAY_BETA_CAP: float = 2.0
    DECAY_TOLERANCE: float = 1e-3
    DECAY_MIN_SAMPLES: int = 32

    # Frostman sampling for non-construction measures
    FROSTMAN_SAMPLES: int = 2000

    # Sumset proxies
    COVER_STABILITY: float = 0.10
    L2_RATIO_THRESHOLD: float = 0.7
    ENERGY_TAIL_FRACTION: float = 0.10

    OUTPUT_DIR: str = "./outputs"
    DEFAULT_SEED: Optional[int] = None


settings = Settings()
