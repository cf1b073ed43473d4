from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.utils import readonly


class Edge(BaseModel):
    model_config = ConfigDict(frozen=True)

    i: int = Field(ge=0, description="Lower endpoint, 0-based")
    j: int = Field(ge=0, description="Upper endpoint, 0-based")
    e: float = Field(description="Edge weight E_ij")

    @model_validator(mode="after")
    def canonical_orientation(self):
        if self.i == self.j:
            raise ValueError(f"self-loop at node {self.i}")
        if self.i > self.j:
            raise ValueError(f"edge ({self.i}, {self.j}) must be stored with i < j")
        return self


class MaxCutGraph(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(gt=0, description="Number of nodes")
    edges: Tuple[Edge, ...] = ()

    @model_validator(mode="after")
    def edges_are_unique_and_in_range(self):
        seen = set()
        for edge in self.edges:
            if edge.j >= self.n:
                raise ValueError(f"edge ({edge.i}, {edge.j}) out of range for n={self.n}")
            if (edge.i, edge.j) in seen:
                raise ValueError(f"duplicate edge ({edge.i}, {edge.j})")
            seen.add((edge.i, edge.j))
        return self

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> float:
        return float(sum(edge.e for edge in self.edges))


class IsingInstance(BaseModel):
    """Symmetric coupling matrix W with zero diagonal."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(gt=0)
    w: np.ndarray

    @field_validator("w", mode="before")
    @classmethod
    def as_float_matrix(cls, value):
        return readonly(np.asarray(value, dtype=float))

    @model_validator(mode="after")
    def symmetric_with_zero_diagonal(self):
        if self.w.shape != (self.n, self.n):
            raise ValueError(f"coupling matrix has shape {self.w.shape}, expected ({self.n}, {self.n})")
        if not np.all(np.isfinite(self.w)):
            raise ValueError("coupling matrix has non-finite entries")
        if not np.array_equal(self.w, self.w.T):
            raise ValueError("coupling matrix must be symmetric")
        if np.any(np.diag(self.w) != 0.0):
            raise ValueError("coupling matrix must have a zero diagonal")
        return self


class GroundStateResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    min_energy: float
    argmin: Tuple[Tuple[int, ...], ...]


class InstanceSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    couplings: int = Field(description="Number of non-zero pairs W_ij, i < j")
    w_min: float
    w_max: float
    positive: int = Field(description="Pairs with W_ij > 0 (ferromagnetic)")
    negative: int = Field(description="Pairs with W_ij < 0 (antiferromagnetic)")
