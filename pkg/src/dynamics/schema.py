from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.config import Config
from src.utils import readonly


class OimParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: float = Field(default=Config.K, gt=0, description="Coupling strength K")
    ks: float = Field(default=Config.KS, ge=0, description="Second-harmonic injection strength K_s")
    alpha: float = Field(default=Config.ALPHA, gt=0, description="Gradient-flow constant α")


class IntegratorConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    dt: float = Field(default=Config.DT, gt=0)
    t_max: float = Field(default=Config.T_MAX, gt=0)
    stop_tol: float = Field(default=Config.STOP_TOL, gt=0)
    record_stride: int = Field(default=Config.RECORD_STRIDE, ge=1)

    @model_validator(mode="after")
    def horizon_covers_one_step(self):
        if self.t_max < self.dt:
            raise ValueError(f"t_max={self.t_max} is shorter than dt={self.dt}")
        return self

    @property
    def n_steps(self) -> int:
        return int(np.ceil(self.t_max / self.dt - 1e-9))


class NonBinary(BaseModel):
    """Readout outcome when some phases are not within tolerance of 0 or π."""

    model_config = ConfigDict(frozen=True)

    indices: Tuple[int, ...]


class Trajectory(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray
    states: np.ndarray
    energies: np.ndarray
    converged: bool
    final_velocity_norm: float

    @field_validator("times", "states", "energies", mode="before")
    @classmethod
    def as_float_array(cls, value):
        return readonly(np.asarray(value, dtype=float))

    @model_validator(mode="after")
    def aligned_and_increasing(self):
        if not (len(self.times) == len(self.states) == len(self.energies)):
            raise ValueError("times, states and energies must have equal lengths")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        return self

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


class BatchEndpoints(BaseModel):
    """Final states of a batch of integrations started together."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    states: np.ndarray
    converged: np.ndarray
    steps: np.ndarray
