"""One-step GHZ preparation in a strongly driven cavity.

The qubit register evolves under an effective collective-spin generator
2*Omega*t*S_x + (g^2/delta)*t*S_x^2 whenever the duration is a whole
number of detuning periods (the qubit-cavity entangling amplitude then
vanishes and the cavity factors out).  A commensurate-time search picks
the duration at which |000> is driven onto a GHZ state, and a truncated
Fock-space integrator of the full time-dependent coupling serves as the
brute-force check of the strong-driving approximation behind that
closed form.

Phase branches: with wrapped phases (g^2 t/delta, Omega t) congruent to
(+pi/2, +3pi/4) the prepared state is (|000> - i|111>)/sqrt 2, while the
conjugate branch (-pi/2, -3pi/4) — e.g. drive red-detuned from the
cavity, delta < 0 — gives (|000> + i|111>)/sqrt 2.  Both satisfy the
same integer timing relations; prepare_ghz reports fidelity against the
+i state.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonCommensurateTimeError, NoScheduleFoundError, TruncationError
from .numerics import unitary_from_hermitian
from .qubits import ThreeQubitState, collective_spin, fidelity, ghz_state, pauli

TWO_PI = 2.0 * math.pi

COMMENSURATE_TOL = 1e-9
SCHEDULE_SEARCH_BOUND = 10**6
CAVITY_EDGE_TOL = 1e-6


def _wrap(phase: float) -> float:
    """Reduce a phase to (-pi, pi]."""
    w = math.fmod(phase, TWO_PI)
    if w > math.pi:
        w -= TWO_PI
    elif w <= -math.pi:
        w += TWO_PI
    return w


@dataclass(frozen=True)
class PrepParams:
    """Preparation-stage parameters, all angular (rad/us).

    g: qubit-cavity coupling (homogeneous across the three qubits);
    delta: drive-to-cavity detuning omega_d - omega_r (sign free);
    epsilon: drive amplitude;
    rabi_override: optional explicit Rabi frequency replacing the derived
        epsilon*g/delta (used for decoupled-limit checks with g = 0).
    """

    g: float
    delta: float
    epsilon: float
    rabi_override: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.g) and self.g >= 0.0):
            raise ValueError(f"coupling g must be finite and >= 0, got {self.g!r}")
        if not math.isfinite(self.delta) or self.delta == 0.0:
            raise ValueError(f"detuning delta must be finite and nonzero, got {self.delta!r}")
        if not math.isfinite(self.epsilon):
            raise ValueError(f"drive amplitude must be finite, got {self.epsilon!r}")

    @property
    def omega_rabi(self) -> float:
        """Rabi frequency epsilon*g/delta unless explicitly overridden."""
        if self.rabi_override is not None:
            return self.rabi_override
        return self.epsilon * self.g / self.delta

    @property
    def strong_driving_ratio(self) -> float:
        """|Omega| / max(|delta|, g): >> 1 where the closed form is trusted."""
        return abs(self.omega_rabi) / max(abs(self.delta), self.g)


@dataclass(frozen=True)
class EvolutionCoefficients:
    """Propagator coefficients: pair coupling a_pair, qubit-cavity
    entangling amplitude b, and the scalar phase c.  All vanish at t=0."""

    a_pair: complex
    b: complex
    c: complex


@dataclass(frozen=True)
class GhzSchedule:
    """Commensurate preparation time and its integer bookkeeping.

    t = 2*pi*n/delta exactly (n signed, so t > 0 for either detuning
    sign); k and m label the spin-squeezing and Rabi phase windings;
    phase_errors are the residuals of the three phase conditions;
    phase_branch is +1 when the prepared state is (|000> - i|111>)/sqrt 2
    and -1 when it is (|000> + i|111>)/sqrt 2.
    """

    t: float
    n: int
    k: int
    m: int
    phase_errors: tuple[float, float, float]
    phase_branch: int


def evolution_coefficients(t: float, p: PrepParams) -> EvolutionCoefficients:
    """Propagator coefficients at time t for homogeneous couplings."""
    if t < 0:
        raise ValueError("time must be non-negative")
    g, delta = p.g, p.delta
    common = (np.exp(-1j * delta * t) - 1.0) / (1j * delta) + t
    a_pair = (g * g / (4.0 * delta)) * common
    b = (g / (2j * delta)) * (np.exp(1j * delta * t) - 1.0)
    c = 3.0 * a_pair
    return EvolutionCoefficients(complex(a_pair), complex(b), complex(c))


def ghz_schedule(p: PrepParams, tol: float) -> GhzSchedule:
    """Smallest commensurate time whose wrapped phases hit the GHZ windows.

    Conditions: |delta| t = 2*pi*n with wrap(g^2 t/delta) = s*pi/2 and
    wrap(Omega t) = s*3*pi/4 for a common sign s (the two branches of the
    docstring above).  Raises NoScheduleFoundError when no n up to 10^6
    satisfies both within tol.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if p.g == 0.0:
        raise NoScheduleFoundError("no schedule exists without qubit-cavity coupling")
    abs_delta = abs(p.delta)
    omega = p.omega_rabi
    counts = np.arange(1, SCHEDULE_SEARCH_BOUND + 1, dtype=float)
    times = TWO_PI * counts / abs_delta
    w_sq = _wrap_array(p.g * p.g / p.delta * times)
    w_rabi = _wrap_array(omega * times)
    same_sign = np.sign(w_sq) == np.sign(w_rabi)
    ok = (
        same_sign
        & (np.abs(np.abs(w_sq) - math.pi / 2.0) <= tol)
        & (np.abs(np.abs(w_rabi) - 3.0 * math.pi / 4.0) <= tol)
    )
    hits = np.nonzero(ok)[0]
    if hits.size == 0:
        raise NoScheduleFoundError(
            f"no commensurate time up to n = {SCHEDULE_SEARCH_BOUND} meets "
            f"both phase conditions within {tol:.1e} rad"
        )
    i = int(hits[0])
    t = float(times[i])
    branch = int(np.sign(w_sq[i]))
    n = int(round(t * p.delta / TWO_PI))
    k = int(round((branch * p.g * p.g / p.delta * t * 2.0 / math.pi - 1.0) / 4.0))
    m = int(round((branch * omega * t / math.pi - 0.75) / 2.0))
    errors = (
        abs(_wrap(p.delta * t)),
        float(abs(abs(w_sq[i]) - math.pi / 2.0)),
        float(abs(abs(w_rabi[i]) - 3.0 * math.pi / 4.0)),
    )
    return GhzSchedule(t=t, n=n, k=k, m=m, phase_errors=errors, phase_branch=branch)


def _wrap_array(phases: np.ndarray) -> np.ndarray:
    w = np.remainder(phases, TWO_PI)
    w[w > math.pi] -= TWO_PI
    return w


def closed_form_propagator(t: float, p: PrepParams) -> np.ndarray:
    """Register factor exp(-i 2 Omega t S_x - i (g^2/delta) t S_x^2).

    Valid only at whole numbers of detuning periods, where the register
    and cavity disentangle and the cavity phase is global.
    """
    if abs(_wrap(p.delta * t)) > COMMENSURATE_TOL:
        raise NonCommensurateTimeError(
            f"delta*t = {p.delta * t!r} is not a multiple of 2*pi within "
            f"{COMMENSURATE_TOL}"
        )
    sx = collective_spin("x")
    gen = 2.0 * p.omega_rabi * sx + (p.g * p.g / p.delta) * (sx @ sx)
    return unitary_from_hermitian(gen, t)


def prepare_ghz(p: PrepParams, tol: float) -> tuple[ThreeQubitState, float]:
    """Run the scheduled closed-form evolution on |000>.

    Returns the prepared state and its fidelity (global phase ignored)
    against (|000> + i|111>)/sqrt 2.  On the phase_branch = +1 schedule
    the prepared state is the conjugate GHZ and the fidelity is ~0.
    """
    schedule = ghz_schedule(p, tol)
    u = closed_form_propagator(schedule.t, p)
    amps = u[:, 0].copy()
    state = ThreeQubitState(amps)
    return state, fidelity(ghz_state(), state)


def fock_evolution_oracle(
    p: PrepParams, t: float, n_trunc: int, dt: float
) -> tuple[ThreeQubitState, float]:
    """Brute-force integration of the time-dependent qubit-cavity coupling.

    Evolves |000> x |vacuum> on the 8*n_trunc-dimensional space under
    H(t) = sum_j [Omega sigma_x_j + g (a^dag sigma-_j e^{-i delta t}
    + a sigma+_j e^{+i delta t})] with per-step unitaries built from the
    midpoint Hamiltonian, then traces out the cavity and returns the
    dominant eigenvector of the reduced register state plus its purity.

    dt must be small enough that halving it moves the final fidelity by
    less than 1e-4; raises TruncationError if the top Fock level ever
    holds more than 1e-6 population.
    """
    if n_trunc < 8:
        raise ValueError(f"need n_trunc >= 8, got {n_trunc}")
    if dt <= 0 or t <= 0:
        raise ValueError("time and step must be positive")
    nq, nc = 8, n_trunc
    lower = np.diag(np.sqrt(np.arange(1, nc)), 1).astype(complex)
    raise_op = lower.conj().T
    sm = np.array([[0, 1], [0, 0]], dtype=complex)   # |0><1|
    sp = sm.conj().T
    x_total = sum(_register_op(q, pauli("x")) for q in (1, 2, 3))
    v_minus = p.g * sum(
        np.kron(_register_op(q, sm), raise_op) for q in (1, 2, 3)
    )
    v_plus = v_minus.conj().T
    h_drive = p.omega_rabi * np.kron(x_total, np.eye(nc, dtype=complex))

    psi = np.zeros(nq * nc, dtype=complex)
    psi[0] = 1.0
    nsteps = int(round(t / dt))
    if nsteps < 1:
        nsteps = 1
    step = t / nsteps
    for i in range(nsteps):
        tm = (i + 0.5) * step
        phase = np.exp(-1j * p.delta * tm)
        h = h_drive + phase * v_minus + np.conj(phase) * v_plus
        psi = unitary_from_hermitian(h, step) @ psi
        edge = float(np.sum(np.abs(psi.reshape(nq, nc)[:, nc - 1]) ** 2))
        if edge > CAVITY_EDGE_TOL:
            raise TruncationError(
                f"population {edge:.3e} at Fock level {nc - 1} exceeds "
                f"{CAVITY_EDGE_TOL}; raise n_trunc"
            )
    block = psi.reshape(nq, nc)
    rho = block @ block.conj().T
    purity = float(np.real(np.trace(rho @ rho)))
    w, v = np.linalg.eigh(rho)
    vec = v[:, -1]
    vec = vec / np.linalg.norm(vec)
    return ThreeQubitState(vec), purity


def _register_op(qubit: int, gate: np.ndarray) -> np.ndarray:
    factors = [np.eye(2, dtype=complex)] * 3
    factors[qubit - 1] = gate
    return np.kron(np.kron(factors[0], factors[1]), factors[2])
