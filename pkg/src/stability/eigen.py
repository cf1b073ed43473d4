"""Dense symmetric eigenvalues with residual certification."""
import logging

import numpy as np

from src.config import Config
from src.errors import EigenConvergenceError
from src.utils import matrix_inf_norm
from .schema import EigenSpectrum, SymmetricMatrix

logger = logging.getLogger(__name__)

MAX_SWEEPS = 100


def jacobi_eigh(a: np.ndarray, rel_tol: float = 1e-12, max_sweeps: int = MAX_SWEEPS):
    """Cyclic Jacobi rotations; returns (eigenvalues, eigenvectors as columns)."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    target = rel_tol * np.linalg.norm(a)

    for sweep in range(max_sweeps + 1):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= target:
            logger.debug("jacobi converged after %d sweeps", sweep)
            return np.diag(a).copy(), v
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                sign = 1.0 if theta >= 0 else -1.0
                t = sign / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q

    raise EigenConvergenceError(f"Jacobi eigensolver did not converge after {max_sweeps} sweeps")


def eigenvalues_symmetric(m: SymmetricMatrix, method: str | None = None) -> EigenSpectrum:
    method = method or Config.EIGEN_METHOD
    a = m.entries
    if method == "lapack":
        values, vectors = np.linalg.eigh(a)
    else:
        values, vectors = jacobi_eigh(a)

    order = np.argsort(values, kind="stable")
    values, vectors = values[order], vectors[:, order]
    residual = float(np.max(np.abs(a @ vectors - vectors * values))) if a.size else 0.0
    return EigenSpectrum(
        values=tuple(float(v) for v in values),
        residual=residual,
        norm=matrix_inf_norm(a),
    )
