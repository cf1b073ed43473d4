"""Property checks of the gradient-flow structure on a concrete instance.

Each check evaluates the analytic constructions at seeded random phase states
and compares them with independent evaluations. Tolerances are scaled by
``max(1, K ||W||_inf + K_s)``.
"""
import logging
from typing import Callable, List, Optional, Tuple

import numpy as np

from src.dynamics.integrator import integrate, seeded_starts
from src.dynamics.schema import IntegratorConfig, OimParams
from src.dynamics.service import dissipation_rate, energy, energy_gradient, spins_to_phases, velocity
from src.errors import OimLabError
from src.fixed_points.service import field_scale
from src.ising.schema import IsingInstance
from src.ising.service import ising_energy, spin_configurations
from src.stability.schema import DifferenceKind
from src.stability.service import equivalence_report, finite_difference_matrix, gradient_flow_jacobian, hessian, jacobian
from src.utils import matrix_inf_norm, sample_generator
from .schema import PropertyResult

logger = logging.getLogger(__name__)

GRADIENT_STEP = 1e-5
MATRIX_STEP = 1e-4
EXHAUSTIVE_SPIN_LIMIT = 8
SAMPLED_SPINS = 256

Check = Callable[[], Tuple[float, float]]


def _run(name: str, check: Check) -> PropertyResult:
    try:
        worst, tolerance = check()
    except (OimLabError, ValueError) as err:
        logger.debug("property %s raised %s", name, err)
        return PropertyResult(name=name, passed=False, detail=str(err).splitlines()[0])
    return PropertyResult(name=name, passed=bool(worst <= tolerance), worst=worst, tolerance=tolerance)


def central_gradient(params: OimParams, inst: IsingInstance, x: np.ndarray, h: float = GRADIENT_STEP) -> np.ndarray:
    grad = np.zeros(inst.n)
    for i in range(inst.n):
        hi, lo = x.copy(), x.copy()
        hi[i] += h
        lo[i] -= h
        grad[i] = (energy(params, inst, hi) - energy(params, inst, lo)) / (2.0 * h)
    return grad


def run_property_suite(inst: IsingInstance, params: OimParams, cfg: Optional[IntegratorConfig] = None,
                       seed: int = 0, n_states: int = 5, n_trajectories: int = 3) -> List[PropertyResult]:
    cfg = cfg or IntegratorConfig()
    scale = field_scale(params, inst)
    states = seeded_starts(inst.n, n_states, seed)

    def gradient_vs_differences():
        worst = max(np.max(np.abs(energy_gradient(params, inst, x) - central_gradient(params, inst, x))) for x in states)
        return float(worst), 1e-6 * scale

    def gradient_vs_velocity():
        worst = max(np.max(np.abs(energy_gradient(params, inst, x) + 2.0 * velocity(params, inst, x))) for x in states)
        return float(worst), 1e-12 * scale

    def matrix_equivalence():
        worst = max(
            np.max(np.abs(gradient_flow_jacobian(params, inst, x).entries + params.alpha * hessian(params, inst, x).entries))
            for x in states
        )
        return float(worst), 1e-12 * scale

    def difference_oracles():
        worst = 0.0
        for x in states:
            fd_h = finite_difference_matrix(DifferenceKind.HESSIAN_OF_E, params, inst, x, MATRIX_STEP)
            fd_j = finite_difference_matrix(DifferenceKind.JACOBIAN_OF_F, params, inst, x, MATRIX_STEP)
            worst = max(worst,
                        np.max(np.abs(hessian(params, inst, x).entries - fd_h.entries)),
                        np.max(np.abs(jacobian(params, inst, x).entries - fd_j.entries)))
        return float(worst), 1e-5 * scale

    def eigenvalue_mirror():
        worst_ratio = 0.0
        for x in states:
            report = equivalence_report(params, inst, x)
            if not report.agree:
                raise OimLabError(
                    f"classifications disagree: jacobian {report.jacobian_classification.value}, "
                    f"hessian {report.hessian_classification.value}"
                )
            bound = 1e-8 * max(1.0, matrix_inf_norm(hessian(params, inst, x).entries))
            certified = max(report.hessian_spectrum.residual / (1e-8 * max(1.0, report.hessian_spectrum.norm)),
                            report.jacobian_spectrum.residual / (1e-8 * max(1.0, report.jacobian_spectrum.norm)))
            worst_ratio = max(worst_ratio, report.max_abs_residual_eigen / bound, certified)
        return float(worst_ratio), 1.0

    def dissipation():
        worst = 0.0
        for index in range(n_trajectories):
            start = sample_generator(seed + 1, index).uniform(0.0, 2.0 * np.pi, inst.n)
            traj = integrate(params, inst, start, cfg)
            rises = np.diff(traj.energies)
            rates = [dissipation_rate(params, inst, state) for state in traj.states]
            worst = max(worst, float(rises.max()) if rises.size else 0.0, max(rates))
        return worst, 1e-9 * scale

    def spin_energy_identity():
        if inst.n <= EXHAUSTIVE_SPIN_LIMIT:
            configs = spin_configurations(inst.n)
        else:
            rng = sample_generator(seed, 0)
            configs = rng.choice(np.array([-1, 1], dtype=np.int8), size=(SAMPLED_SPINS, inst.n))
        worst = max(
            abs(energy(params, inst, spins_to_phases(s)) - (2.0 * params.k * ising_energy(inst, s) - inst.n * params.ks))
            for s in configs
        )
        return float(worst), 1e-12 * scale

    def binary_fixed_points():
        if inst.n <= EXHAUSTIVE_SPIN_LIMIT:
            configs = spin_configurations(inst.n)
        else:
            configs = sample_generator(seed, 1).choice(np.array([-1, 1], dtype=np.int8), size=(SAMPLED_SPINS, inst.n))
        worst = max(np.max(np.abs(velocity(params, inst, spins_to_phases(s)))) for s in configs)
        return float(worst), 1e-12 * scale

    checks = [
        ("gradient-finite-difference", gradient_vs_differences),
        ("gradient-velocity-identity", gradient_vs_velocity),
        ("jacobian-hessian-equivalence", matrix_equivalence),
        ("finite-difference-oracles", difference_oracles),
        ("eigenvalue-mirror", eigenvalue_mirror),
        ("dissipation-monotone", dissipation),
        ("spin-energy-identity", spin_energy_identity),
        ("binary-fixed-points", binary_fixed_points),
    ]
    return [_run(name, check) for name, check in checks]
