from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.dynamics.schema import OimParams
from src.stability.schema import Classification

NONBINARY = "nonbinary"
NONCONVERGED = "nonconverged"


class SweepRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    ks_over_k: float
    fp_id: int
    spins: str
    ising_energy: float
    min_eig_hessian: float
    classification: Classification
    is_global_optimum: bool


class SweepTable(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: float
    rows: List[SweepRow] = []

    @model_validator(mode="after")
    def ratios_increase(self):
        ratios = [row.ks_over_k for row in self.rows]
        if ratios != sorted(ratios):
            raise ValueError("rows must be grouped by increasing ratio")
        return self

    def rows_for(self, fp_id: int) -> List[SweepRow]:
        return [row for row in self.rows if row.fp_id == fp_id]


class BasinStats(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_samples: int = Field(ge=1)
    seed: int
    rng_name: str
    params: OimParams
    counts: Dict[str, int] = Field(description="Tally per reached spin label, or nonbinary / nonconverged")
    ground_state_hit_rate: Optional[float] = Field(default=None, ge=0.0, le=1.0)

    @model_validator(mode="after")
    def counts_cover_samples(self):
        if sum(self.counts.values()) != self.n_samples:
            raise ValueError("outcome counts must sum to n_samples")
        return self


class SolveResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    spins: Optional[List[int]] = None
    ising_energy: Optional[float] = None
    oim_energy: Optional[float] = None
    n_starts: int
    n_binary: int = Field(description="Starts whose endpoint read out as a spin configuration")
    seed: int
    metadata: Dict[str, Any] = {}

    @property
    def non_binary_only(self) -> bool:
        return self.spins is None
