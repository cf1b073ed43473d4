import numpy as np

from src.config import Config
from src.dynamics.schema import NonBinary, OimParams
from src.dynamics.service import as_phases, energy, phases_to_spins, velocity
from src.errors import InvalidParameterError
from src.ising.schema import IsingInstance
from src.ising.service import ising_energy
from .eigen import eigenvalues_symmetric
from .schema import (Classification, DifferenceKind, EigenSpectrum, EquivalenceReport,
                     MatrixKind, StabilityReport, SymmetricMatrix)

# Largest asymmetry tolerated in a finite-difference Jacobian before symmetrizing
FD_ASYMMETRY_TOL = 1e-6


def _cos_differences(theta: np.ndarray) -> np.ndarray:
    """cos(θ_i - θ_j), built so that the result is exactly symmetric."""
    c, s = np.cos(theta), np.sin(theta)
    return np.outer(c, c) + np.outer(s, s)


def _single_state(x, n: int) -> np.ndarray:
    theta = as_phases(x, n)
    if theta.ndim != 1:
        raise InvalidParameterError("expected a single phase state")
    return theta


def hessian(params: OimParams, inst: IsingInstance, x) -> SymmetricMatrix:
    """Second derivatives of E.

    Off-diagonal: -K (W_ij + W_ji) cos(θ_i - θ_j).
    Diagonal: K sum_j (W_ij + W_ji) cos(θ_i - θ_j) + 4 K_s cos(2θ_i).
    """
    theta = _single_state(x, inst.n)
    weighted = (inst.w + inst.w.T) * _cos_differences(theta)
    h = -params.k * weighted
    h[np.diag_indices(inst.n)] = params.k * np.sum(weighted, axis=1) + 4.0 * params.ks * np.cos(2.0 * theta)
    return SymmetricMatrix(entries=h)


def jacobian(params: OimParams, inst: IsingInstance, x) -> SymmetricMatrix:
    """∂f_i/∂θ_j of the phase velocity, differentiated from f directly.

    Off-diagonal: K W_ij cos(θ_i - θ_j).
    Diagonal: -K sum_j W_ij cos(θ_i - θ_j) - 2 K_s cos(2θ_i).
    """
    theta = _single_state(x, inst.n)
    weighted = inst.w * _cos_differences(theta)
    j = params.k * weighted
    j[np.diag_indices(inst.n)] = -params.k * np.sum(weighted, axis=1) - 2.0 * params.ks * np.cos(2.0 * theta)
    return SymmetricMatrix(entries=j)


def gradient_flow_jacobian(params: OimParams, inst: IsingInstance, x) -> SymmetricMatrix:
    """Jacobian of the α-scaled field 2α·f."""
    return SymmetricMatrix(entries=2.0 * params.alpha * jacobian(params, inst, x).entries)


def finite_difference_matrix(kind: DifferenceKind, params: OimParams, inst: IsingInstance, x, h: float = 1e-4) -> SymmetricMatrix:
    if h <= 0:
        raise InvalidParameterError(f"step h must be positive, got {h}")
    theta = np.array(_single_state(x, inst.n), dtype=float)
    n = inst.n

    if DifferenceKind(kind) is DifferenceKind.HESSIAN_OF_E:
        def e(point):
            return energy(params, inst, point)

        out = np.zeros((n, n))
        for a in range(n):
            for b in range(a, n):
                shifts = [(1, 1, 1.0), (1, -1, -1.0), (-1, 1, -1.0), (-1, -1, 1.0)]
                total = 0.0
                for sa, sb, coeff in shifts:
                    point = theta.copy()
                    point[a] += sa * h
                    point[b] += sb * h
                    total += coeff * e(point)
                out[a, b] = out[b, a] = total / (4.0 * h * h)
        return SymmetricMatrix(entries=out)

    out = np.zeros((n, n))
    for b in range(n):
        hi, lo = theta.copy(), theta.copy()
        hi[b] += h
        lo[b] -= h
        out[:, b] = (velocity(params, inst, hi) - velocity(params, inst, lo)) / (2.0 * h)
    asymmetry = float(np.max(np.abs(out - out.T))) if out.size else 0.0
    if asymmetry > FD_ASYMMETRY_TOL:
        raise InvalidParameterError(f"finite-difference Jacobian is asymmetric by {asymmetry:.3g}")
    return SymmetricMatrix(entries=0.5 * (out + out.T))


def eigen_tolerance(spectrum: EigenSpectrum, eigen_tol: float | None = None) -> float:
    eigen_tol = Config.EIGEN_TOL if eigen_tol is None else eigen_tol
    return eigen_tol * max(1.0, spectrum.norm)


def classify(spec: EigenSpectrum, matrix_kind: MatrixKind, tol: float) -> Classification:
    if tol <= 0:
        raise InvalidParameterError(f"tol must be positive, got {tol}")
    values = np.asarray(spec.values)
    if MatrixKind(matrix_kind) is MatrixKind.JACOBIAN:
        # Jacobian eigenvalues carry the opposite sign of the Hessian's
        values = -values
    if np.any(np.abs(values) <= tol):
        return Classification.DEGENERATE
    if np.all(values > tol):
        return Classification.ATTRACTIVE_MINIMUM
    if np.all(values < -tol):
        return Classification.MAXIMUM
    return Classification.SADDLE


def equivalence_report(params: OimParams, inst: IsingInstance, x, eigen_tol: float | None = None) -> EquivalenceReport:
    h = hessian(params, inst, x)
    j = gradient_flow_jacobian(params, inst, x)
    alpha = params.alpha

    h_spec = eigenvalues_symmetric(h)
    j_spec = eigenvalues_symmetric(j)
    mirrored = -alpha * np.asarray(h_spec.values)[::-1]

    # Jacobian band mirrors the Hessian band: tol_J = α·tol_H
    h_tol = eigen_tolerance(h_spec, eigen_tol)
    h_class = classify(h_spec, MatrixKind.HESSIAN, h_tol)
    j_class = classify(j_spec, MatrixKind.JACOBIAN, alpha * h_tol)
    return EquivalenceReport(
        alpha=alpha,
        max_abs_residual_matrix=float(np.max(np.abs(j.entries + alpha * h.entries))),
        max_abs_residual_eigen=float(np.max(np.abs(np.asarray(j_spec.values) - mirrored))),
        hessian_spectrum=h_spec,
        jacobian_spectrum=j_spec,
        jacobian_classification=j_class,
        hessian_classification=h_class,
        agree=j_class == h_class,
    )


def stability_report(params: OimParams, inst: IsingInstance, x, bin_tol: float | None = None,
                     eigen_tol: float | None = None) -> StabilityReport:
    bin_tol = Config.BIN_TOL if bin_tol is None else bin_tol
    theta = _single_state(x, inst.n)
    equivalence = equivalence_report(params, inst, theta, eigen_tol)
    spins = phases_to_spins(theta, bin_tol)
    binary = not isinstance(spins, NonBinary)
    return StabilityReport(
        point=[float(v) for v in theta],
        spins=[int(v) for v in spins] if binary else None,
        energy=energy(params, inst, theta),
        ising_energy=ising_energy(inst, spins) if binary else None,
        eigs_hessian=list(equivalence.hessian_spectrum.values),
        eigs_jacobian=list(equivalence.jacobian_spectrum.values),
        classification_hessian=equivalence.hessian_classification,
        classification_jacobian=equivalence.jacobian_classification,
        equivalence_residual_matrix=equivalence.max_abs_residual_matrix,
        equivalence_residual_eigen=equivalence.max_abs_residual_eigen,
        agree=equivalence.agree,
    )
