from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.config import Config
from src.dynamics.schema import IntegratorConfig, OimParams
from src.utils import RNG_NAME


class LogLevel(str, Enum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class RunConfig(BaseModel):
    """Every numeric flag of the command line, defaulting to ``Config``."""

    model_config = ConfigDict(frozen=True)

    k: float = Config.K
    ks: float = Config.KS
    alpha: float = Config.ALPHA
    dt: float = Config.DT
    t_max: float = Config.T_MAX
    stop_tol: float = Config.STOP_TOL
    bin_tol: float = Field(default=Config.BIN_TOL, gt=0)
    eigen_tol: float = Field(default=Config.EIGEN_TOL, gt=0)
    starts: int = Field(default=Config.STARTS, ge=1)
    seed: int = Config.SEED
    ratios: List[float] = []
    output: Optional[Path] = None
    format: Optional[OutputFormat] = None

    @property
    def params(self) -> OimParams:
        return OimParams(k=self.k, ks=self.ks, alpha=self.alpha)

    @property
    def integrator(self) -> IntegratorConfig:
        return IntegratorConfig(dt=self.dt, t_max=self.t_max, stop_tol=self.stop_tol)

    def metadata(self) -> dict:
        values = self.model_dump(mode="json", exclude={"output", "format"})
        values["rng_name"] = RNG_NAME
        values["threads"] = Config.WORKERS
        values["eigen_method"] = Config.EIGEN_METHOD
        return values
