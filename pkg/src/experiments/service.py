import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.config import Config
from src.dynamics.integrator import integrate_starts, seeded_starts
from src.dynamics.schema import IntegratorConfig, NonBinary, OimParams
from src.dynamics.service import energy, phases_to_spins, spins_to_phases
from src.errors import GuardExceededError, InvalidParameterError, MaxIterationsError, SingularJacobianError
from src.fixed_points.service import FixedPointService, refine_fixed_point
from src.ising.schema import IsingInstance
from src.ising.service import energy_tolerance, ising_energy, spin_label
from src.utils import RNG_NAME
from .schema import NONBINARY, NONCONVERGED, BasinStats, SolveResult, SweepRow, SweepTable

logger = logging.getLogger(__name__)

Outcome = Tuple[str, Optional[np.ndarray]]


class ExperimentService:

    def __init__(self, fixed_point_service: Optional[FixedPointService] = None, bin_tol: Optional[float] = None):
        self.fixed_points = fixed_point_service or FixedPointService()
        self.bin_tol = Config.BIN_TOL if bin_tol is None else bin_tol

    def ks_sweep(self, inst: IsingInstance, k: float, ratios: Sequence[float],
                 alpha: float = Config.ALPHA) -> SweepTable:
        if inst.n > self.fixed_points.guard:
            raise GuardExceededError(inst.n, self.fixed_points.guard)
        ratios = [float(r) for r in ratios]
        if any(r <= 0 for r in ratios):
            raise InvalidParameterError("ratios must be positive")
        if any(b <= a for a, b in zip(ratios, ratios[1:])):
            raise InvalidParameterError("ratios must be strictly increasing")

        rows: List[SweepRow] = []
        for ratio in ratios:
            params = OimParams(k=k, ks=ratio * k, alpha=alpha)
            catalog = self.fixed_points.enumerate_spin_fixed_points(inst, params)
            for record in sorted(catalog.records, key=lambda r: r.id):
                rows.append(SweepRow(
                    ks_over_k=ratio,
                    fp_id=record.id,
                    spins=spin_label(record.spins),
                    ising_energy=record.ising_energy,
                    min_eig_hessian=record.report.min_eig_hessian,
                    classification=record.report.classification_hessian,
                    is_global_optimum=record.is_global_optimum,
                ))
            logger.info("ratio %g: %d fixed points classified", ratio, len(catalog.records))
        return SweepTable(k=k, rows=rows)

    def outcomes(self, inst: IsingInstance, params: OimParams, n_samples: int, seed: int,
                 cfg: Optional[IntegratorConfig] = None) -> List[Outcome]:
        """Reached spin label (or nonbinary / nonconverged) for each seeded start."""
        if n_samples < 1:
            raise InvalidParameterError(f"number of samples must be at least 1, got {n_samples}")
        starts = seeded_starts(inst.n, n_samples, seed)
        ends = integrate_starts(params, inst, starts, cfg, self.fixed_points.chunk_size)

        results: List[Outcome] = []
        for index, (end, converged) in enumerate(ends):
            if end is None:
                results.append((NONCONVERGED, None))
                continue
            spins = phases_to_spins(end, self.bin_tol)
            if not converged or isinstance(spins, NonBinary):
                try:
                    end = refine_fixed_point(inst, params, end)
                    converged = True
                except (SingularJacobianError, MaxIterationsError) as err:
                    logger.debug("start %d: polish failed: %s", index, err.detail)
                if not converged:
                    results.append((NONCONVERGED, None))
                    continue
                spins = phases_to_spins(end, self.bin_tol)
            if isinstance(spins, NonBinary):
                results.append((NONBINARY, None))
            else:
                results.append((spin_label(spins), spins))
        return results

    def monte_carlo_basins(self, inst: IsingInstance, params: OimParams, n_samples: int, seed: int,
                           cfg: Optional[IntegratorConfig] = None) -> BasinStats:
        outcomes = self.outcomes(inst, params, n_samples, seed, cfg)
        counts: dict = {}
        for key, _ in outcomes:
            counts[key] = counts.get(key, 0) + 1

        hit_rate = None
        ground = self.fixed_points.ground_state(inst)
        if ground is not None:
            threshold = ground.min_energy + energy_tolerance(inst)
            hits = sum(1 for _, spins in outcomes if spins is not None and ising_energy(inst, spins) <= threshold)
            hit_rate = hits / n_samples

        return BasinStats(
            n_samples=n_samples,
            seed=seed,
            rng_name=RNG_NAME,
            params=params,
            counts=dict(sorted(counts.items())),
            ground_state_hit_rate=hit_rate,
        )

    def solve(self, inst: IsingInstance, params: OimParams, n_starts: int, seed: int,
              cfg: Optional[IntegratorConfig] = None) -> SolveResult:
        best, best_energy, n_binary = None, None, 0
        for _, spins in self.outcomes(inst, params, n_starts, seed, cfg):
            if spins is None:
                continue
            n_binary += 1
            value = ising_energy(inst, spins)
            if best_energy is None or value < best_energy:
                best, best_energy = spins, value

        if best is None:
            logger.warning("no start reached a binary phase state")
            return SolveResult(n_starts=n_starts, n_binary=0, seed=seed)
        return SolveResult(
            spins=[int(v) for v in best],
            ising_energy=best_energy,
            oim_energy=energy(params, inst, spins_to_phases(best)),
            n_starts=n_starts,
            n_binary=n_binary,
            seed=seed,
        )
