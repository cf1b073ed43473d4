import numpy as np

from src.config import Config
from src.errors import DimensionMismatchError, GuardExceededError, InvalidParameterError
from .schema import GroundStateResult, InstanceSummary, IsingInstance, MaxCutGraph

# Rows per block when scoring all 2^N configurations
ENUMERATION_BLOCK = 1 << 14


def as_spins(s, n: int) -> np.ndarray:
    spins = np.asarray(s)
    if spins.shape != (n,):
        raise DimensionMismatchError(n, spins.size, what="spin configuration")
    if not np.all((spins == 1) | (spins == -1)):
        raise InvalidParameterError("spin entries must be exactly -1 or +1")
    return spins.astype(np.int8)


def to_ising(g: MaxCutGraph) -> IsingInstance:
    w = np.zeros((g.n, g.n))
    for edge in g.edges:
        w[edge.i, edge.j] = -edge.e
        w[edge.j, edge.i] = -edge.e
    return IsingInstance(n=g.n, w=w)


def ising_energy(inst: IsingInstance, s) -> float:
    """H(s) = -sum_{i<j} W_ij s_i s_j."""
    spins = as_spins(s, inst.n).astype(float)
    return float(-0.5 * (spins @ inst.w @ spins))


def cut_value(g: MaxCutGraph, s) -> float:
    spins = as_spins(s, g.n)
    return float(sum(edge.e * (1 - spins[edge.i] * spins[edge.j]) / 2 for edge in g.edges))


def spin_configurations(n: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Spin vectors for indices ``start..stop``; bit i of the index set means s_i = -1."""
    stop = (1 << n) if stop is None else stop
    index = np.arange(start, stop, dtype=np.int64)
    bits = (index[:, None] >> np.arange(n, dtype=np.int64)) & 1
    return (1 - 2 * bits).astype(np.int8)


def spin_index(s) -> int:
    spins = np.asarray(s)
    return int(sum(1 << i for i, value in enumerate(spins) if value < 0))


def energy_tolerance(inst: IsingInstance) -> float:
    return 1e-12 * max(1.0, float(np.abs(inst.w).sum()))


def brute_force_ground(inst: IsingInstance, guard: int | None = None) -> GroundStateResult:
    guard = Config.ENUMERATION_GUARD if guard is None else guard
    if inst.n > guard:
        raise GuardExceededError(inst.n, guard)

    total = 1 << inst.n
    energies = np.empty(total)
    for start in range(0, total, ENUMERATION_BLOCK):
        stop = min(start + ENUMERATION_BLOCK, total)
        spins = spin_configurations(inst.n, start, stop).astype(float)
        energies[start:stop] = -0.5 * np.einsum("ki,ki->k", spins @ inst.w, spins)

    min_energy = float(energies.min())
    winners = np.flatnonzero(energies <= min_energy + energy_tolerance(inst))
    argmin = tuple(tuple(int(v) for v in spin_configurations(inst.n, k, k + 1)[0]) for k in winners)
    return GroundStateResult(min_energy=min_energy, argmin=argmin)


def random_instance(n: int, rng: np.random.Generator, low: float = -1.0, high: float = 1.0) -> IsingInstance:
    upper = np.triu(rng.uniform(low, high, size=(n, n)), k=1)
    return IsingInstance(n=n, w=upper + upper.T)


def summarize(inst: IsingInstance) -> InstanceSummary:
    pairs = inst.w[np.triu_indices(inst.n, k=1)]
    nonzero = pairs[pairs != 0.0]
    return InstanceSummary(
        n=inst.n,
        couplings=int(nonzero.size),
        w_min=float(nonzero.min()) if nonzero.size else 0.0,
        w_max=float(nonzero.max()) if nonzero.size else 0.0,
        positive=int(np.count_nonzero(nonzero > 0)),
        negative=int(np.count_nonzero(nonzero < 0)),
    )


def spin_label(s) -> str:
    return "".join("+" if v > 0 else "-" for v in np.asarray(s))
