from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    THREADS: int = 1
    LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"
    ENUMERATION_GUARD: int = 20
    EIGEN_METHOD: Literal["jacobi", "lapack"] = "jacobi"
    CHUNK_SIZE: int = 64

    # Numeric defaults shared by the library and every CLI flag
    K: float = 1.0
    KS: float = 1.0
    ALPHA: float = 0.5
    DT: float = 0.01
    T_MAX: float = 100.0
    STOP_TOL: float = 1e-8
    RECORD_STRIDE: int = 10
    BIN_TOL: float = 0.1
    EIGEN_TOL: float = 1e-8
    STARTS: int = 50
    SEED: int = 0

    @property
    def WORKERS(self) -> int:
        return max(1, self.THREADS)

    model_config = SettingsConfigDict(
        env_prefix="OIMLAB_",
        env_file=".env",
        extra="ignore"
    )

# Instantiate the Config object
Config = Settings()
