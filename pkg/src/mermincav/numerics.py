"""Dense complex linear algebra used by every other module.

Matrices and vectors are plain ``numpy.ndarray`` values with dtype
``complex128``.  All routines validate their inputs and are pure, so
results may be shared freely across threads or processes.
"""

import numpy as np

from .errors import NotHermitianError, SingularMatrixError

HERMITICITY_TOL = 1e-12
UNITARITY_TOL = 1e-10
RESIDUAL_TOL = 1e-10
CONDITION_LIMIT = 1e12


def as_matrix(a) -> np.ndarray:
    """Coerce to a validated 2-D complex matrix (finite entries, positive dims)."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("matrix entries must be finite")
    return m


def as_vector(v) -> np.ndarray:
    """Coerce to a validated 1-D complex vector."""
    x = np.asarray(v, dtype=complex)
    if x.ndim != 1 or x.shape[0] == 0:
        raise ValueError(f"expected a non-empty 1-D vector, got shape {x.shape}")
    if not np.all(np.isfinite(x.view(float))):
        raise ValueError("vector entries must be finite")
    return x


def kron(a, b) -> np.ndarray:
    """Kronecker product; the first factor is the most significant subsystem."""
    return np.kron(as_matrix(a), as_matrix(b))


def hermiticity_defect(h: np.ndarray) -> float:
    """Largest entrywise deviation from h = h^dagger."""
    return float(np.max(np.abs(h - h.conj().T)))


def unitary_from_hermitian(h, t: float) -> np.ndarray:
    """exp(-i h t) for Hermitian h, via eigendecomposition.

    Eigendecomposition keeps the result unitary to machine precision for
    the dimensions used here (<= a few hundred), unlike a truncated series.
    """
    m = as_matrix(h)
    defect = hermiticity_defect(m)
    if defect > HERMITICITY_TOL:
        raise NotHermitianError(
            f"matrix is not Hermitian: max |h - h^dagger| = {defect:.3e}"
        )
    w, v = np.linalg.eigh(m)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def unitarity_defect(u: np.ndarray) -> float:
    """Largest entrywise deviation of u^dagger u from the identity."""
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def solve_linear(a, b) -> np.ndarray:
    """Solve a x = b for square a, guarding against ill conditioning.

    Raises SingularMatrixError when the condition number estimate exceeds
    1e12 or the residual fails the 1e-10 * max(1, max|b|) bound.
    """
    m = as_matrix(a)
    rhs = as_vector(b)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    if m.shape[0] != rhs.shape[0]:
        raise ValueError(
            f"dimension mismatch: matrix {m.shape} vs vector {rhs.shape}"
        )
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularMatrixError(f"condition number estimate {cond:.3e} > 1e12")
    x = np.linalg.solve(m, rhs)
    residual = float(np.max(np.abs(m @ x - rhs)))
    bound = RESIDUAL_TOL * max(1.0, float(np.max(np.abs(rhs))))
    if residual > bound:
        raise SingularMatrixError(
            f"solve residual {residual:.3e} exceeds bound {bound:.3e}"
        )
    return x
