"""Spectral joint-measurement of the register through a driven cavity.

In the dispersive regime each qubit pulls the cavity frequency by
+/-Gamma_j depending on its sigma_z eigenvalue, so each joint basis state
shifts the cavity by Sigma_j +/-Gamma_j.  Driving the (lossy) cavity and
recording the steady-state photon number against the drive detuning
yields one Lorentzian peak per populated joint basis state whose relative
height is that state's probability.

The steady state comes from a closed linear system for the eight
cavity-correlated moments <a * (sigma_z products)>: every sigma_z product
is conserved, so those conserved register moments enter only as the
inhomogeneous data of an 8x8 complex solve per detuning.  Two independent
oracles guard it: an analytic Lorentzian mixture (exact, because the
moment system block-diagonalizes over joint eigenstates) and a
truncated-Fock-space steady-state solve of the full master equation.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    GridTooCoarseError,
    MissingParametersError,
    NegativePhotonNumberError,
    TruncationError,
)
from .numerics import solve_linear
from .qubits import (
    BASIS_LABELS,
    JointProbabilities,
    ThreeQubitState,
    basis_index,
    pauli,
)

TWO_PI = 2.0 * math.pi

# sigma_z product subsets in canonical order; () carries <1> = 1
_SUBSETS = ((), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3))

PHOTON_TOL = 1e-12
RESOLVABILITY_FACTOR = 5.0
VALIDITY_THRESHOLD = 0.1


def _subset_signs(subset: tuple[int, ...]) -> np.ndarray:
    """sigma_z-product eigenvalue of each joint basis state for one subset."""
    signs = np.ones(8)
    for b in range(8):
        v = 1
        for j in subset:
            v *= 1 if (b >> (3 - j)) & 1 else -1
        signs[b] = v
    return signs


_SIGNS = np.array([_subset_signs(s) for s in _SUBSETS])  # shape (8 subsets, 8 labels)


@dataclass(frozen=True)
class DispersiveParams:
    """Readout-stage parameters, all angular (rad/us).

    gamma: per-qubit cavity pulls; kappa: cavity linewidth; epsilon_ro:
    readout drive amplitude.  couplings/qubit_detunings (g_j, Delta_j)
    are optional and only needed for the dispersive-validity report.
    """

    gamma: tuple[float, float, float]
    kappa: float
    epsilon_ro: float
    couplings: tuple[float, float, float] | None = None
    qubit_detunings: tuple[float, float, float] | None = None

    def __post_init__(self):
        gam = tuple(float(g) for g in self.gamma)
        if len(gam) != 3 or not all(math.isfinite(g) for g in gam):
            raise ValueError("need three finite cavity pulls")
        object.__setattr__(self, "gamma", gam)
        if not (math.isfinite(self.kappa) and self.kappa > 0):
            raise ValueError(f"cavity decay must be positive, got {self.kappa!r}")
        if not (math.isfinite(self.epsilon_ro) and self.epsilon_ro > 0):
            raise ValueError(f"readout drive must be positive, got {self.epsilon_ro!r}")
        gaps = [abs(gam[i] - gam[j]) for i in range(3) for j in range(i + 1, 3)]
        if min(gaps) < RESOLVABILITY_FACTOR * self.kappa:
            warnings.warn(
                "cavity pulls closer than 5*kappa: spectral peaks may overlap",
                stacklevel=2,
            )

    @property
    def peak_height(self) -> float:
        """Steady photon number of a unit-probability peak on resonance."""
        return 4.0 * self.epsilon_ro**2 / self.kappa**2


@dataclass(frozen=True)
class QubitMoments:
    """The seven conserved sigma_z-product expectation values."""

    z1: float
    z2: float
    z3: float
    z12: float
    z13: float
    z23: float
    z123: float

    def vector(self) -> np.ndarray:
        """Inhomogeneous data in canonical subset order, <1> first."""
        return np.array(
            [1.0, self.z1, self.z2, self.z3, self.z12, self.z13, self.z23, self.z123]
        )


@dataclass(frozen=True)
class CavityMoments:
    """Steady-state values of <a * (sigma_z products)>."""

    a: complex
    az1: complex
    az2: complex
    az3: complex
    az12: complex
    az13: complex
    az23: complex
    az123: complex

    def vector(self) -> np.ndarray:
        return np.array(
            [self.a, self.az1, self.az2, self.az3,
             self.az12, self.az13, self.az23, self.az123],
            dtype=complex,
        )


@dataclass(frozen=True)
class SpectrumCurve:
    """Steady photon number against drive detuning, with the channel
    normalized by the unit-probability peak height 4 eps^2/kappa^2."""

    detunings: np.ndarray
    photon_numbers: np.ndarray
    normalized: np.ndarray

    def __post_init__(self):
        det = np.array(self.detunings, dtype=float)
        pho = np.array(self.photon_numbers, dtype=float)
        nor = np.array(self.normalized, dtype=float)
        if not (det.shape == pho.shape == nor.shape) or det.ndim != 1:
            raise ValueError("curve channels must be equal-length 1-D arrays")
        if np.any(pho < 0):
            raise ValueError("photon numbers must be non-negative")
        if np.any(nor > 1.0 + 1e-6):
            raise ValueError("normalized channel exceeds 1 beyond tolerance")
        for arr, name in ((det, "detunings"), (pho, "photon_numbers"), (nor, "normalized")):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class PeakEstimate:
    """Shift location and extracted probability per joint basis label."""

    shifts: dict[str, float]
    p_hat: dict[str, float]

    def probabilities(self) -> JointProbabilities:
        return JointProbabilities(
            np.array([self.p_hat[label] for label in BASIS_LABELS])
        )


@dataclass(frozen=True)
class ValidityRatio:
    name: str
    value: float
    flagged: bool


@dataclass(frozen=True)
class ValidityReport:
    """All dispersive-regime ratios with their pass/flag status."""

    ratios: tuple[ValidityRatio, ...]

    @property
    def ok(self) -> bool:
        return not any(r.flagged for r in self.ratios)


def dispersive_validity(p: DispersiveParams) -> ValidityReport:
    """Check every dispersive-regime ratio against the < 0.1 threshold.

    Ratios: g_j/Delta_j per qubit plus g_j g_j' / (Delta Delta') for each
    qubit pair and both detuning denominators (Delta_jj' = Delta_j' -
    Delta_j).  A ratio is flagged when it is not strictly inside (0, 0.1);
    the 0.1 boundary itself is flagged.
    """
    if p.couplings is None or p.qubit_detunings is None:
        raise MissingParametersError(
            "dispersive validity needs couplings and qubit detunings"
        )
    g = p.couplings
    d = p.qubit_detunings
    ratios: list[ValidityRatio] = []

    def add(name: str, value: float):
        flagged = not (0.0 < value < VALIDITY_THRESHOLD)
        ratios.append(ValidityRatio(name, float(value), flagged))

    for j in range(3):
        add(f"g{j + 1}/Delta{j + 1}", g[j] / d[j])
    for j in range(3):
        for jp in range(j + 1, 3):
            djjp = d[jp] - d[j]  # omega_j - omega_j'
            if djjp == 0.0:
                raise MissingParametersError(
                    f"qubits {j + 1} and {jp + 1} are degenerate: "
                    "pair detuning vanishes"
                )
            add(f"g{j + 1}g{jp + 1}/(Delta{j + 1}Delta{j + 1}{jp + 1})",
                g[j] * g[jp] / (d[j] * djjp))
            add(f"g{j + 1}g{jp + 1}/(Delta{jp + 1}Delta{j + 1}{jp + 1})",
                g[j] * g[jp] / (d[jp] * djjp))
    return ValidityReport(tuple(ratios))


def chi_shift(label: str, p: DispersiveParams) -> float:
    """Cavity-pull shift of one joint basis state: sum of +/-Gamma_j."""
    b = basis_index(label)
    return sum(
        p.gamma[j - 1] * (1.0 if (b >> (3 - j)) & 1 else -1.0) for j in (1, 2, 3)
    )


def all_shifts(p: DispersiveParams) -> np.ndarray:
    """Shifts for the eight labels in basis order."""
    return np.array([chi_shift(label, p) for label in BASIS_LABELS])


def qubit_moments(s: ThreeQubitState) -> QubitMoments:
    """Expectation values of the seven sigma_z products (all conserved)."""
    probs = np.abs(s.amplitudes) ** 2
    values = _SIGNS[1:] @ probs
    return QubitMoments(*[float(v) for v in values])


def _coupling_matrix(p: DispersiveParams) -> np.ndarray:
    """Symmetric matrix coupling the cavity moments: multiplying a
    sigma_z product by sigma_z_j toggles j in the subset."""
    index = {s: i for i, s in enumerate(_SUBSETS)}
    coupling = np.zeros((8, 8))
    for subset, i in index.items():
        for j in (1, 2, 3):
            toggled = tuple(sorted(set(subset) ^ {j}))
            coupling[i, index[toggled]] += p.gamma[j - 1]
    return coupling


def _moment_system(delta: float, p: DispersiveParams) -> np.ndarray:
    return (1j * delta - p.kappa / 2.0) * np.eye(8, dtype=complex) - 1j * _coupling_matrix(p)


def steady_state_cavity_moments(
    delta: float, qm: QubitMoments, p: DispersiveParams
) -> CavityMoments:
    """Solve the 8x8 steady-state moment system at one drive detuning."""
    rhs = 1j * p.epsilon_ro * qm.vector()
    solution = solve_linear(_moment_system(delta, p), rhs)
    amplitude_bound = 2.0 * p.epsilon_ro / p.kappa
    if abs(solution[0]) > amplitude_bound * (1.0 + 1e-9):
        raise NegativePhotonNumberError(
            f"cavity amplitude {abs(solution[0]):.3e} exceeds the driven "
            f"bound {amplitude_bound:.3e}: inconsistent moments"
        )
    return CavityMoments(*[complex(v) for v in solution])


def steady_photon_number(cm: CavityMoments, p: DispersiveParams) -> float:
    """<a^dag a> in steady state: -(2 eps/kappa) Im<a>."""
    value = -2.0 * p.epsilon_ro / p.kappa * cm.a.imag
    if value < -PHOTON_TOL:
        raise NegativePhotonNumberError(
            f"steady photon number {value:.3e} below -{PHOTON_TOL}"
        )
    return max(value, 0.0)


def _photon_sweep(qm: QubitMoments, grid: np.ndarray, p: DispersiveParams) -> np.ndarray:
    """Batched version of the per-detuning moment solve over a whole grid.

    Identical system and right-hand side as steady_state_cavity_moments;
    one LAPACK call over the stacked 8x8 systems instead of a Python loop.
    """
    coupling = _coupling_matrix(p)
    rhs = 1j * p.epsilon_ro * qm.vector()
    eye = np.eye(8, dtype=complex)
    systems = (
        1j * grid[:, None, None] * eye
        - (p.kappa / 2.0) * eye
        - 1j * coupling
    )
    stacked = np.broadcast_to(rhs[:, None], (len(grid), 8, 1)).copy()
    solutions = np.linalg.solve(systems, stacked)[:, :, 0]
    residual = float(np.max(np.abs(np.einsum("nij,nj->ni", systems, solutions) - rhs)))
    bound = 1e-10 * max(1.0, float(np.max(np.abs(rhs))))
    if residual > bound:
        raise NegativePhotonNumberError(
            f"sweep residual {residual:.3e} exceeds {bound:.3e}"
        )
    photons = -2.0 * p.epsilon_ro / p.kappa * solutions[:, 0].imag
    return np.maximum(photons, 0.0)


def transmission_spectrum(
    s: ThreeQubitState, grid: np.ndarray, p: DispersiveParams
) -> SpectrumCurve:
    """Steady-state transmission of the driven cavity over a detuning grid."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise ValueError("grid must be a 1-D array with at least two points")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing")
    photons = _photon_sweep(qubit_moments(s), grid, p)
    return SpectrumCurve(grid, photons, photons / p.peak_height)


def default_detuning_grid(p: DispersiveParams, step_mhz: float = 0.1) -> np.ndarray:
    """Symmetric grid covering 1.1x the largest shift, default 0.1 MHz step.

    Built MHz-first and scaled by 2*pi once, so the angular values are in
    the image of that scaling and the CSV export round-trips bit-exactly.
    """
    span_mhz = 1.1 * sum(abs(g) for g in p.gamma) / TWO_PI
    n = int(math.ceil(span_mhz / step_mhz))
    return TWO_PI * (step_mhz * np.arange(-n, n + 1))


def lorentzian_mixture(
    probs: JointProbabilities, delta: float, p: DispersiveParams
) -> float:
    """Analytic steady photon number: one Lorentzian of HWHM kappa/2 per
    joint basis state, weighted by its probability.

    Exact (not approximate): the sigma_z products are conserved, so the
    moment system decomposes over joint eigenstates and each contributes
    eps^2 / ((delta - shift)^2 + kappa^2/4).
    """
    shifts = all_shifts(p)
    lorentz = p.epsilon_ro**2 / ((delta - shifts) ** 2 + p.kappa**2 / 4.0)
    return float(probs.p @ lorentz)


def lindblad_steady_oracle(
    s: ThreeQubitState,
    delta: float,
    p: DispersiveParams,
    n_trunc: int,
    qubit_phases: tuple[float, float, float] = (0.0, 0.0, 0.0),
) -> float:
    """Steady <a^dag a> from the full master equation on a truncated space.

    Builds the Liouvillian of the dispersive Hamiltonian with cavity decay
    kappa and solves its stationary linear system directly.  The register
    populations are conserved, so the stationary solution is pinned by
    replacing one redundant row per joint-eigenstate sector with that
    sector's population constraint.  Raises TruncationError when the
    steady photon number is not well inside the cutoff.
    """
    if n_trunc < 2:
        raise ValueError("need at least two Fock levels")
    nq, nc = 8, n_trunc
    dim = nq * nc
    lower = np.diag(np.sqrt(np.arange(1, nc)), 1).astype(complex)
    number = lower.conj().T @ lower
    eye_q = np.eye(nq, dtype=complex)
    eye_d = np.eye(dim, dtype=complex)

    z_ops = [_register_z(q) for q in (1, 2, 3)]
    pull = -delta * eye_q + sum(g * z for g, z in zip(p.gamma, z_ops))
    qubit_term = sum(
        0.5 * w * z for w, z in zip(qubit_phases, z_ops)
    )
    hamiltonian = (
        np.kron(pull, number)
        + np.kron(qubit_term, np.eye(nc, dtype=complex))
        + p.epsilon_ro * np.kron(eye_q, lower + lower.conj().T)
    )
    jump = np.kron(eye_q, lower)
    number_full = np.kron(eye_q, number)

    # row-major vectorization: vec(A X B) = (A kron B^T) vec(X)
    liouvillian = (
        -1j * (np.kron(hamiltonian, eye_d) - np.kron(eye_d, hamiltonian.T))
        + p.kappa * (
            np.kron(jump, jump.conj())
            - 0.5 * np.kron(number_full, eye_d)
            - 0.5 * np.kron(eye_d, number_full.T)
        )
    )

    populations = np.abs(s.amplitudes) ** 2
    system = liouvillian.copy()
    rhs = np.zeros(dim * dim, dtype=complex)
    for sector in range(nq):
        # the n-diagonal rows of one sector sum to zero (trace conservation
        # per conserved sector); replace the top-Fock one with the constraint
        top = sector * nc + (nc - 1)
        row = top * dim + top
        system[row, :] = 0.0
        for n in range(nc):
            flat = sector * nc + n
            system[row, flat * dim + flat] = 1.0
        rhs[row] = populations[sector]
    rho = np.linalg.solve(system, rhs).reshape(dim, dim)
    photon = float(np.real(np.trace(rho @ number_full)))
    if photon > 0.1 * n_trunc:
        raise TruncationError(
            f"steady photon number {photon:.3e} exceeds 0.1 * n_trunc; "
            "raise the Fock cutoff"
        )
    return max(photon, 0.0)


def _register_z(qubit: int) -> np.ndarray:
    factors = [np.eye(2, dtype=complex)] * 3
    factors[qubit - 1] = pauli("z")
    return np.kron(np.kron(factors[0], factors[1]), factors[2])


def extract_probabilities(curve: SpectrumCurve, p: DispersiveParams) -> PeakEstimate:
    """Read the normalized curve at each shift location, then renormalize.

    The shift locations are analytically known, so extraction is a
    deterministic nearest-grid-point read; renormalizing to sum 1 absorbs
    the uniform finite-linewidth suppression of all peaks.
    """
    grid = curve.detunings
    step = float(np.median(np.diff(grid)))
    shifts = {label: chi_shift(label, p) for label in BASIS_LABELS}
    raw = np.empty(8)
    for i, label in enumerate(BASIS_LABELS):
        j = int(np.argmin(np.abs(grid - shifts[label])))
        if abs(grid[j] - shifts[label]) > 0.5 * step * (1.0 + 1e-9):
            raise GridTooCoarseError(
                f"no grid point within half a step of the shift for |{label}>"
            )
        raw[i] = curve.normalized[j]
    total = raw.sum()
    if total <= 0.0:
        raise GridTooCoarseError("curve reads zero at every shift location")
    p_hat = raw / total
    return PeakEstimate(
        shifts=shifts,
        p_hat={label: float(p_hat[i]) for i, label in enumerate(BASIS_LABELS)},
    )
