from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.dynamics.schema import OimParams
from src.ising.schema import InstanceSummary
from src.stability.schema import StabilityReport


class FixedPointRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: int = Field(description="Spin index for binary points, 2^N + k for the k-th non-binary point")
    phases: List[float]
    spins: Optional[List[int]] = Field(default=None, description="None when the point is not binary")
    oim_energy: float
    ising_energy: Optional[float] = None
    velocity_norm: float = Field(description="||f||_inf at the stored phases")
    report: StabilityReport
    is_global_optimum: bool = False

    @property
    def is_binary(self) -> bool:
        return self.spins is not None


class FixedPointCatalog(BaseModel):
    model_config = ConfigDict(frozen=True)

    params: OimParams
    instance: InstanceSummary
    records: List[FixedPointRecord] = []
    metadata: Dict[str, Any] = {}

    @model_validator(mode="after")
    def sorted_by_energy(self):
        energies = [record.oim_energy for record in self.records]
        if any(b < a for a, b in zip(energies, energies[1:])):
            raise ValueError("records must be sorted by oim_energy")
        return self

    @property
    def all_agree(self) -> bool:
        return all(record.report.agree for record in self.records)
