from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.utils import readonly


class Classification(str, Enum):
    ATTRACTIVE_MINIMUM = "AttractiveMinimum"
    SADDLE = "Saddle"
    MAXIMUM = "Maximum"
    DEGENERATE = "Degenerate"


class MatrixKind(str, Enum):
    HESSIAN = "hessian"
    JACOBIAN = "jacobian"


class DifferenceKind(str, Enum):
    HESSIAN_OF_E = "hessian-of-E"
    JACOBIAN_OF_F = "jacobian-of-f"


class SymmetricMatrix(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def exactly_symmetric(cls, value):
        entries = np.asarray(value, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"matrix must be square, got shape {entries.shape}")
        if not np.array_equal(entries, entries.T):
            raise ValueError("matrix is not symmetric")
        return readonly(entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


class EigenSpectrum(BaseModel):
    model_config = ConfigDict(frozen=True)

    values: Tuple[float, ...] = Field(description="Eigenvalues, ascending")
    residual: float = Field(description="max over eigenpairs of ||Av - λv||_inf")
    norm: float = Field(description="||A||_inf of the decomposed matrix")


class EquivalenceReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha: float
    max_abs_residual_matrix: float
    max_abs_residual_eigen: float
    hessian_spectrum: EigenSpectrum
    jacobian_spectrum: EigenSpectrum
    jacobian_classification: Classification
    hessian_classification: Classification
    agree: bool


class StabilityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    point: List[float]
    spins: Optional[List[int]] = None
    energy: float
    ising_energy: Optional[float] = None
    eigs_hessian: List[float]
    eigs_jacobian: List[float]
    classification_hessian: Classification
    classification_jacobian: Classification
    equivalence_residual_matrix: float
    equivalence_residual_eigen: float
    agree: bool

    @property
    def min_eig_hessian(self) -> float:
        return self.eigs_hessian[0]
