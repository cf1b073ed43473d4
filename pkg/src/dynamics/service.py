"""Phase dynamics, energy and readout of an oscillator Ising machine.

All vector operations accept either a single phase state of shape ``(N,)`` or
a batch of shape ``(B, N)``.
"""
import numpy as np

from src.errors import DimensionMismatchError, InvalidParameterError
from src.ising.schema import IsingInstance
from src.utils import TWO_PI
from .schema import NonBinary, OimParams


def as_phases(x, n: int) -> np.ndarray:
    phases = np.asarray(x, dtype=float)
    if phases.ndim not in (1, 2) or phases.shape[-1] != n:
        raise DimensionMismatchError(n, phases.shape[-1] if phases.ndim else phases.size, what="phase state")
    return phases


def velocity(params: OimParams, inst: IsingInstance, x) -> np.ndarray:
    """f_i = -K sum_j W_ij sin(θ_i - θ_j) - K_s sin(2θ_i)."""
    theta = as_phases(x, inst.n)
    c, s = np.cos(theta), np.sin(theta)
    # sin(θi-θj) = s_i c_j - c_i s_j
    coupling = s * (c @ inst.w.T) - c * (s @ inst.w.T)
    return -params.k * coupling - params.ks * np.sin(2.0 * theta)


def gradient_flow_velocity(params: OimParams, inst: IsingInstance, x) -> np.ndarray:
    """dθ/dt = -α∇E, i.e. the OIM field rescaled by 2α."""
    return 2.0 * params.alpha * velocity(params, inst, x)


def energy(params: OimParams, inst: IsingInstance, x):
    """E = -K sum_{i != j} W_ij cos(θ_i - θ_j) - K_s sum_i cos(2θ_i)."""
    theta = as_phases(x, inst.n)
    c, s = np.cos(theta), np.sin(theta)
    pairs = np.einsum("...i,ij,...j->...", c, inst.w, c) + np.einsum("...i,ij,...j->...", s, inst.w, s)
    value = -params.k * pairs - params.ks * np.sum(np.cos(2.0 * theta), axis=-1)
    return float(value) if np.ndim(value) == 0 else value


def energy_gradient(params: OimParams, inst: IsingInstance, x) -> np.ndarray:
    theta = as_phases(x, inst.n)
    if theta.ndim != 1:
        raise InvalidParameterError("energy_gradient expects a single phase state")
    # Each unordered pair appears twice in E, so W and its transpose both contribute.
    both = inst.w + inst.w.T
    diff = np.subtract.outer(theta, theta)
    return params.k * np.sum(both * np.sin(diff), axis=1) + 2.0 * params.ks * np.sin(2.0 * theta)


def dissipation_rate(params: OimParams, inst: IsingInstance, x) -> float:
    """dE/dt = -2 sum_i f_i^2."""
    f = velocity(params, inst, x)
    return float(-2.0 * np.sum(f * f))


def canonicalize(x) -> np.ndarray:
    return np.mod(np.asarray(x, dtype=float), TWO_PI)


def angular_distance(a, b) -> np.ndarray:
    delta = np.mod(np.asarray(a, dtype=float) - np.asarray(b, dtype=float), TWO_PI)
    return np.minimum(delta, TWO_PI - delta)


def spins_to_phases(s) -> np.ndarray:
    return np.where(np.asarray(s) < 0, np.pi, 0.0)


def phases_to_spins(x, bin_tol: float = 0.1) -> np.ndarray | NonBinary:
    if not 0.0 < bin_tol < np.pi / 4:
        raise InvalidParameterError(f"bin_tol must lie in (0, π/4), got {bin_tol}")
    theta = np.asarray(x, dtype=float)
    near_zero = angular_distance(theta, 0.0) <= bin_tol
    near_pi = angular_distance(theta, np.pi) <= bin_tol
    offending = np.flatnonzero(~(near_zero | near_pi))
    if offending.size:
        return NonBinary(indices=tuple(int(i) for i in offending))
    return np.where(near_zero, 1, -1).astype(np.int8)
