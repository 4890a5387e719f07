"""Three-qubit state algebra: Pauli operators, local gates, angle encoding,
joint probabilities, the parity correlation function, and collective spin.

Conventions (fixed package-wide):

* single-qubit basis order (|0>, |1>) with sigma_z |0> = -|0>, sigma_z |1> = +|1>;
* joint basis |ijk> stored at index b = 4i + 2j + k, qubit 1 most significant;
* the correlation function is the expectation of the three-fold sigma_z
  product, +1 on the odd-weight labels {001, 010, 100, 111}.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotSymmetricSectorError, NotUnitaryError
from .numerics import as_matrix, unitarity_defect

TWO_PI = 2.0 * math.pi

BASIS_LABELS = ("000", "001", "010", "011", "100", "101", "110", "111")

# sigma_z1 sigma_z2 sigma_z3 eigenvalue per joint basis index
PARITY = np.array([1 if label.count("1") % 2 else -1 for label in BASIS_LABELS])

NORM_TOL = 1e-10
PROB_SUM_TOL = 1e-9
SYMMETRIC_SECTOR_TOL = 1e-9

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, 1j], [-1j, 0]], dtype=complex),
    "z": np.array([[-1, 0], [0, 1]], dtype=complex),
}


def pauli(axis: str) -> np.ndarray:
    """2x2 Pauli matrix in basis (|0>, |1>); sigma_z = diag(-1, +1)."""
    try:
        return _PAULI[axis].copy()
    except KeyError:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}") from None


def basis_index(label: str) -> int:
    if label not in BASIS_LABELS:
        raise ValueError(f"unknown joint basis label {label!r}")
    return int(label, 2)


@dataclass(frozen=True)
class ThreeQubitState:
    """Pure state of the three-qubit register: 8 complex amplitudes, unit norm."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (8,):
            raise ValueError(f"need 8 amplitudes, got shape {amps.shape}")
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes must be finite")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm!r} differs from 1 beyond {NORM_TOL}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def amplitude(self, label: str) -> complex:
        return complex(self.amplitudes[basis_index(label)])


def basis_state(label: str) -> ThreeQubitState:
    amps = np.zeros(8, dtype=complex)
    amps[basis_index(label)] = 1.0
    return ThreeQubitState(amps)


def ghz_state() -> ThreeQubitState:
    """(|000> + i|111>)/sqrt(2), the canonical one-step preparation target."""
    amps = np.zeros(8, dtype=complex)
    amps[0] = 1.0 / math.sqrt(2.0)
    amps[7] = 1j / math.sqrt(2.0)
    return ThreeQubitState(amps)


def ghz_state_phase_free() -> ThreeQubitState:
    """(|000> + |111>)/sqrt(2)."""
    amps = np.zeros(8, dtype=complex)
    amps[0] = amps[7] = 1.0 / math.sqrt(2.0)
    return ThreeQubitState(amps)


def fidelity(a: ThreeQubitState, b: ThreeQubitState) -> float:
    """|<a|b>|^2 — insensitive to global phase."""
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


def _reduce_angle(theta: float) -> float:
    if not math.isfinite(theta):
        raise ValueError("angles must be finite")
    return float(theta % TWO_PI)


@dataclass(frozen=True)
class LocalAngles:
    """Per-qubit encoding angles, reduced mod 2*pi on construction."""

    theta1: float
    theta2: float
    theta3: float

    def __post_init__(self):
        object.__setattr__(self, "theta1", _reduce_angle(self.theta1))
        object.__setattr__(self, "theta2", _reduce_angle(self.theta2))
        object.__setattr__(self, "theta3", _reduce_angle(self.theta3))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.theta1, self.theta2, self.theta3)


@dataclass(frozen=True)
class JointProbabilities:
    """Collapse probabilities over the 8 joint basis labels."""

    p: np.ndarray

    def __post_init__(self):
        arr = np.array(self.p, dtype=float)
        if arr.shape != (8,):
            raise ValueError(f"need 8 probabilities, got shape {arr.shape}")
        if np.any(arr < -1e-12):
            raise ValueError("probabilities must be non-negative")
        total = float(arr.sum())
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        arr.setflags(write=False)
        object.__setattr__(self, "p", arr)

    def __getitem__(self, label: str) -> float:
        return float(self.p[basis_index(label)])

    def as_dict(self) -> dict[str, float]:
        return {label: float(self.p[i]) for i, label in enumerate(BASIS_LABELS)}


def apply_single(gate, qubit: int, s: ThreeQubitState) -> ThreeQubitState:
    """Apply a 2x2 unitary on one tensor factor (qubit in {1, 2, 3})."""
    g = as_matrix(gate)
    if g.shape != (2, 2):
        raise ValueError(f"gate must be 2x2, got {g.shape}")
    if unitarity_defect(g) > NORM_TOL:
        raise NotUnitaryError(
            f"gate is not unitary: defect {unitarity_defect(g):.3e}"
        )
    if qubit not in (1, 2, 3):
        raise ValueError(f"qubit index must be 1, 2 or 3, got {qubit}")
    tensor = s.amplitudes.reshape(2, 2, 2)
    axis = qubit - 1
    out = np.moveaxis(np.tensordot(g, tensor, axes=([1], [axis])), 0, axis)
    return ThreeQubitState(out.reshape(8))


def encode_rotation(theta: float) -> np.ndarray:
    """Hadamard-like local encoding gate carrying the angle theta.

    Matrix (1/sqrt 2) [[1, i e^{i theta}], [i e^{-i theta}, 1]] in basis
    (|0>, |1>).  Equals exp(-i sigma_z theta/2) exp(i sigma_x pi/4)
    exp(i sigma_z theta/2) under this package's sigma_z = diag(-1, +1).
    """
    if not math.isfinite(theta):
        raise ValueError("angle must be finite")
    return np.array(
        [
            [1.0, 1j * np.exp(1j * theta)],
            [1j * np.exp(-1j * theta), 1.0],
        ],
        dtype=complex,
    ) / math.sqrt(2.0)


def encode_locals(s: ThreeQubitState, angles: LocalAngles) -> ThreeQubitState:
    """Encode one angle per qubit with the Hadamard-like rotation."""
    out = s
    for qubit, theta in enumerate(angles.as_tuple(), start=1):
        out = apply_single(encode_rotation(theta), qubit, out)
    return out


def joint_probabilities(s: ThreeQubitState) -> JointProbabilities:
    return JointProbabilities(np.abs(s.amplitudes) ** 2)


def parity_correlation(p: JointProbabilities) -> float:
    """Signed probability sum: + on odd-weight labels, - on even-weight ones."""
    value = float(PARITY @ p.p)
    return max(-1.0, min(1.0, value))


def correlation_closed_form(angles: LocalAngles) -> float:
    """-cos(theta1 + theta2 + theta3), the GHZ-state correlation."""
    return -math.cos(sum(angles.as_tuple()))


def _operator_on(qubit: int, gate: np.ndarray) -> np.ndarray:
    factors = [np.eye(2, dtype=complex)] * 3
    factors[qubit - 1] = gate
    return np.kron(np.kron(factors[0], factors[1]), factors[2])


def collective_spin(axis: str) -> np.ndarray:
    """Half the sum of the one-qubit Paulis along the axis ('x' or 'z')."""
    if axis not in ("x", "z"):
        raise ValueError(f"axis must be 'x' or 'z', got {axis!r}")
    g = pauli(axis)
    return 0.5 * sum(_operator_on(q, g) for q in (1, 2, 3))


# Symmetric (spin-3/2) sector basis, ordered by ascending collective
# sigma_z eigenvalue: |000>, W(one 1-bit), W(two 1-bits), |111>.
def _dicke_basis() -> np.ndarray:
    d = np.zeros((8, 4), dtype=complex)
    d[0b000, 0] = 1.0
    for b in (0b001, 0b010, 0b100):
        d[b, 1] = 1.0 / math.sqrt(3.0)
    for b in (0b011, 0b101, 0b110):
        d[b, 2] = 1.0 / math.sqrt(3.0)
    d[0b111, 3] = 1.0
    return d


@dataclass(frozen=True)
class SpinDecomposition:
    """Coefficients over the x-axis collective-spin eigenbasis of the
    symmetric sector, ordered by eigenvalue -3/2, -1/2, +1/2, +3/2."""

    c: np.ndarray

    def __post_init__(self):
        arr = np.array(self.c, dtype=complex)
        if arr.shape != (4,):
            raise ValueError(f"need 4 coefficients, got shape {arr.shape}")
        total = float(np.sum(np.abs(arr) ** 2))
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"coefficient weights sum to {total!r}, not 1")
        arr.setflags(write=False)
        object.__setattr__(self, "c", arr)

    def weights(self) -> np.ndarray:
        return np.abs(self.c) ** 2


def spin_decomposition(s: ThreeQubitState) -> SpinDecomposition:
    """Expand a symmetric-sector state over the S_x eigenbasis.

    Eigenvector phases are pinned deterministically: the largest-magnitude
    computational-basis component of each eigenvector is made real positive.
    """
    dicke = _dicke_basis()
    projected = dicke @ (dicke.conj().T @ s.amplitudes)
    weight = float(np.linalg.norm(projected) ** 2)
    if weight < 1.0 - SYMMETRIC_SECTOR_TOL:
        raise NotSymmetricSectorError(
            f"symmetric-sector weight {weight!r} below 1 - {SYMMETRIC_SECTOR_TOL}"
        )
    sx_sym = dicke.conj().T @ collective_spin("x") @ dicke
    eigvals, eigvecs = np.linalg.eigh(sx_sym)
    coeffs = np.zeros(4, dtype=complex)
    for i in range(4):
        vec = dicke @ eigvecs[:, i]
        k = int(np.argmax(np.abs(vec)))
        phase = vec[k] / abs(vec[k])
        vec = vec * np.conj(phase)
        coeffs[i] = np.vdot(vec, s.amplitudes)
    return SpinDecomposition(coeffs)
