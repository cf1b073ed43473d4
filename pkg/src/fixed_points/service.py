import logging
import warnings
from typing import List, Optional, Sequence

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from src.config import Config
from src.dynamics.integrator import integrate_starts, seeded_starts
from src.dynamics.schema import IntegratorConfig, OimParams
from src.dynamics.service import angular_distance, as_phases, canonicalize, spins_to_phases, velocity
from src.errors import (GuardExceededError, InvalidParameterError, MaxIterationsError,
                        ResidualError, SingularJacobianError)
from src.ising.schema import GroundStateResult, IsingInstance
from src.ising.service import brute_force_ground, energy_tolerance, spin_configurations, spin_index, summarize
from src.stability.service import jacobian, stability_report
from src.utils import chunked, inf_norm, matrix_inf_norm, parallel_map
from .schema import FixedPointCatalog, FixedPointRecord

logger = logging.getLogger(__name__)

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 50
DEDUP_TOL = 1e-6


def field_scale(params: OimParams, inst: IsingInstance) -> float:
    return max(1.0, params.k * matrix_inf_norm(inst.w) + params.ks)


def refine_fixed_point(inst: IsingInstance, params: OimParams, guess, tol: float = NEWTON_TOL,
                       max_iter: int = NEWTON_MAX_ITER) -> np.ndarray:
    """Newton iteration θ <- θ - J(θ)^-1 f(θ) with partial pivoting."""
    x = np.array(as_phases(guess, inst.n), dtype=float)
    f = velocity(params, inst, x)
    start_residual = inf_norm(f)
    if not np.isfinite(start_residual):
        raise InvalidParameterError("velocity at the initial guess is not finite")
    if start_residual <= tol:
        return x

    scale = field_scale(params, inst)
    for iteration in range(1, max_iter + 1):
        jm = jacobian(params, inst, x).entries
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", LinAlgWarning)
            lu, piv = lu_factor(jm)
        if np.min(np.abs(np.diag(lu))) <= 1e-12 * max(matrix_inf_norm(jm), scale):
            raise SingularJacobianError(f"Jacobian is numerically singular at Newton iteration {iteration}")
        x = x - lu_solve((lu, piv), f)
        f = velocity(params, inst, x)
        residual = inf_norm(f)
        if residual <= tol:
            logger.debug("newton converged in %d iterations, residual %.3g", iteration, residual)
            return x

    raise MaxIterationsError(f"Newton did not reach ||f|| <= {tol:g} in {max_iter} iterations")


def is_duplicate(phases: np.ndarray, known: Sequence[np.ndarray], tol: float = DEDUP_TOL) -> bool:
    return any(np.max(angular_distance(phases, other)) <= tol for other in known)


class FixedPointService:

    def __init__(self, guard: Optional[int] = None, bin_tol: Optional[float] = None,
                 eigen_tol: Optional[float] = None, chunk_size: Optional[int] = None):
        self.guard = Config.ENUMERATION_GUARD if guard is None else guard
        self.bin_tol = Config.BIN_TOL if bin_tol is None else bin_tol
        self.eigen_tol = Config.EIGEN_TOL if eigen_tol is None else eigen_tol
        self.chunk_size = Config.CHUNK_SIZE if chunk_size is None else chunk_size

    def ground_state(self, inst: IsingInstance) -> Optional[GroundStateResult]:
        if inst.n > self.guard:
            return None
        return brute_force_ground(inst, self.guard)

    def build_record(self, inst: IsingInstance, params: OimParams, phases, record_id: int,
                     ground: Optional[GroundStateResult]) -> FixedPointRecord:
        report = stability_report(params, inst, phases, self.bin_tol, self.eigen_tol)
        is_optimum = (
            ground is not None
            and report.ising_energy is not None
            and report.ising_energy <= ground.min_energy + energy_tolerance(inst)
        )
        return FixedPointRecord(
            id=record_id,
            phases=report.point,
            spins=report.spins,
            oim_energy=report.energy,
            ising_energy=report.ising_energy,
            velocity_norm=inf_norm(velocity(params, inst, np.asarray(report.point))),
            report=report,
            is_global_optimum=is_optimum,
        )

    def catalog(self, inst: IsingInstance, params: OimParams, records: List[FixedPointRecord],
                metadata: Optional[dict] = None) -> FixedPointCatalog:
        ordered = sorted(records, key=lambda record: (record.oim_energy, tuple(record.phases)))
        return FixedPointCatalog(params=params, instance=summarize(inst), records=ordered,
                                 metadata=metadata or {})

    def enumerate_spin_fixed_points(self, inst: IsingInstance, params: OimParams) -> FixedPointCatalog:
        if inst.n > self.guard:
            raise GuardExceededError(inst.n, self.guard, "use harvest or solve for larger instances")
        ground = brute_force_ground(inst, self.guard)
        limit = 1e-12 * field_scale(params, inst)

        def build(indices: range) -> List[FixedPointRecord]:
            spins = spin_configurations(inst.n, indices.start, indices.stop)
            built = []
            for index, config in zip(indices, spins):
                theta = spins_to_phases(config)
                residual = inf_norm(velocity(params, inst, theta))
                if residual > limit:
                    raise ResidualError(f"binary state {index} has ||f|| = {residual:.3g}")
                built.append(self.build_record(inst, params, theta, index, ground))
            return built

        chunks = parallel_map(build, chunked(1 << inst.n, self.chunk_size))
        records = [record for chunk in chunks for record in chunk]
        logger.info("enumerated %d spin fixed points", len(records))
        return self.catalog(inst, params, records)

    def harvest_from_trajectories(self, inst: IsingInstance, params: OimParams, n_starts: int, seed: int,
                                  cfg: Optional[IntegratorConfig] = None, inits=None,
                                  merge_enumeration: bool = True) -> FixedPointCatalog:
        cfg = cfg or IntegratorConfig()
        if inits is not None:
            starts = np.array(as_phases(inits, inst.n), dtype=float, ndmin=2)
        else:
            if n_starts < 1:
                raise InvalidParameterError(f"n_starts must be at least 1, got {n_starts}")
            starts = seeded_starts(inst.n, n_starts, seed)

        found: List[np.ndarray] = []
        for index, (end, _) in enumerate(integrate_starts(params, inst, starts, cfg, self.chunk_size)):
            if end is None:
                continue
            try:
                root = canonicalize(refine_fixed_point(inst, params, end))
            except (SingularJacobianError, MaxIterationsError, InvalidParameterError) as err:
                logger.warning("start %d: %s", index, err.detail)
                continue
            if not is_duplicate(root, found):
                found.append(root)

        ground = self.ground_state(inst)
        if merge_enumeration and ground is not None:
            records = list(self.enumerate_spin_fixed_points(inst, params).records)
        else:
            records = []
        known = [np.asarray(record.phases) for record in records]
        ids = {record.id for record in records}

        extra = 0
        for root in found:
            if is_duplicate(root, known):
                continue
            record = self.build_record(inst, params, root, 0, ground)
            if record.is_binary:
                # Roots that read out as spins collapse onto that spin configuration's record
                record_id = spin_index(record.spins)
                if record_id in ids:
                    continue
            else:
                record_id = (1 << inst.n) + extra
                extra += 1
            records.append(record.model_copy(update={"id": record_id}))
            known.append(root)
            ids.add(record_id)

        logger.info("harvested %d distinct fixed points from %d starts", len(found), len(starts))
        return self.catalog(inst, params, records)
