"""Mermin-test orchestration: two-step GHZ confirmation, four-correlator
acquisition, and Q evaluation in exact and spectral modes."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfRangeError
from .qubits import (
    BASIS_LABELS,
    JointProbabilities,
    LocalAngles,
    ThreeQubitState,
    apply_single,
    encode_locals,
    joint_probabilities,
    parity_correlation,
)
from .spectroscopy import (
    DispersiveParams,
    SpectrumCurve,
    all_shifts,
    default_detuning_grid,
    extract_probabilities,
    qubit_moments,
    transmission_spectrum,
    _photon_sweep,
)

CORRELATOR_SLACK = 1e-9
PEAK_THRESHOLD = 0.05
TWO_PEAK_TOL = 0.02

# maps (|000> + i|111>)/sqrt 2 onto the phase-free GHZ state
PHASE_FIX_GATE = np.diag([1.0, -1j]).astype(complex)

# quarter-turn taking (|000> + |111>)/sqrt 2 onto the equal superposition
# of the four even-weight basis states
COHERENCE_GATE = np.array([[1.0, 1.0], [-1.0, 1.0]], dtype=complex) / math.sqrt(2.0)


@dataclass(frozen=True)
class MerminSettings:
    """The six local angles (theta_j, theta'_j) defining one Mermin test."""

    theta: LocalAngles
    theta_prime: LocalAngles

    def combos(self) -> tuple[LocalAngles, LocalAngles, LocalAngles, LocalAngles]:
        """The four angle combinations of the Q combination, in order."""
        t, tp = self.theta, self.theta_prime
        return (
            LocalAngles(tp.theta1, t.theta2, t.theta3),
            LocalAngles(t.theta1, tp.theta2, t.theta3),
            LocalAngles(t.theta1, t.theta2, tp.theta3),
            LocalAngles(tp.theta1, tp.theta2, tp.theta3),
        )


@dataclass(frozen=True)
class MerminReport:
    """Outcome of one Mermin test: correlators, Q values, and the
    probability tables behind them.  Spectral fields are None when the
    run was exact-only."""

    settings: MerminSettings
    correlators_exact: tuple[float, float, float, float]
    q_exact: float
    probabilities_exact: tuple[dict[str, float], ...]
    correlators_spectral: tuple[float, float, float, float] | None = None
    q_spectral: float | None = None
    delta_q: float | None = None
    probabilities_spectral: tuple[dict[str, float], ...] | None = None
    curves: tuple[SpectrumCurve, ...] | None = None

    def to_json_dict(self) -> dict:
        """Report in the exported JSON layout."""
        out = {
            "settings": {
                "theta": list(self.settings.theta.as_tuple()),
                "theta_prime": list(self.settings.theta_prime.as_tuple()),
            },
            "correlators_exact": list(self.correlators_exact),
            "correlators_spectral": (
                None if self.correlators_spectral is None
                else list(self.correlators_spectral)
            ),
            "q_exact": self.q_exact,
            "q_spectral": self.q_spectral,
            "delta_q": self.delta_q,
            "probabilities_per_setting": [
                {
                    "angles": list(combo.as_tuple()),
                    "exact": self.probabilities_exact[i],
                    "spectral": (
                        None if self.probabilities_spectral is None
                        else self.probabilities_spectral[i]
                    ),
                }
                for i, combo in enumerate(self.settings.combos())
            ],
        }
        return out


def mermin_q(e1: float, e2: float, e3: float, e4: float) -> float:
    """|e1 + e2 + e3 - e4|, the Mermin combination (local realism caps it at 2)."""
    for i, e in enumerate((e1, e2, e3, e4), start=1):
        if not (-1.0 - CORRELATOR_SLACK <= e <= 1.0 + CORRELATOR_SLACK):
            raise OutOfRangeError(f"correlator {i} = {e!r} outside [-1, 1]")
    return abs(e1 + e2 + e3 - e4)


def run_mermin(
    state: ThreeQubitState,
    settings: MerminSettings,
    mode: str,
    p: DispersiveParams,
    grid: np.ndarray | None = None,
) -> MerminReport:
    """Encode each angle combination, measure, and evaluate Q.

    mode 'exact' uses collapse probabilities only; 'spectral' and 'both'
    additionally sweep the cavity transmission for every combination and
    extract probabilities from the peaks.  Exact results are always
    reported so the spectral deviation delta_q is first class.
    """
    if mode not in ("exact", "spectral", "both"):
        raise ValueError(f"mode must be 'exact', 'spectral' or 'both', got {mode!r}")
    if grid is None:
        grid = default_detuning_grid(p)

    e_exact: list[float] = []
    probs_exact: list[dict[str, float]] = []
    e_spec: list[float] = []
    probs_spec: list[dict[str, float]] = []
    curves: list[SpectrumCurve] = []

    for combo in settings.combos():
        encoded = encode_locals(state, combo)
        exact = joint_probabilities(encoded)
        e_exact.append(parity_correlation(exact))
        probs_exact.append(exact.as_dict())
        if mode != "exact":
            curve = transmission_spectrum(encoded, grid, p)
            estimate = extract_probabilities(curve, p)
            e_spec.append(parity_correlation(estimate.probabilities()))
            probs_spec.append(dict(estimate.p_hat))
            curves.append(curve)

    q_exact = mermin_q(*e_exact)
    if mode == "exact":
        return MerminReport(
            settings=settings,
            correlators_exact=tuple(e_exact),
            q_exact=q_exact,
            probabilities_exact=tuple(probs_exact),
        )
    q_spectral = mermin_q(*e_spec)
    return MerminReport(
        settings=settings,
        correlators_exact=tuple(e_exact),
        q_exact=q_exact,
        probabilities_exact=tuple(probs_exact),
        correlators_spectral=tuple(e_spec),
        q_spectral=q_spectral,
        delta_q=q_exact - q_spectral,
        probabilities_spectral=tuple(probs_spec),
        curves=tuple(curves),
    )


Ensemble = list[tuple[ThreeQubitState, float]]


@dataclass(frozen=True)
class TwoStepVerification:
    """Both confirmation spectra, their shift-location reads, and the verdict."""

    curve_raw: SpectrumCurve
    curve_rotated: SpectrumCurve
    reads_raw: dict[str, float]
    reads_rotated: dict[str, float]
    verdict: str


def _as_ensemble(state) -> Ensemble:
    if isinstance(state, ThreeQubitState):
        return [(state, 1.0)]
    ensemble = [(s, float(w)) for s, w in state]
    total = sum(w for _, w in ensemble)
    if abs(total - 1.0) > 1e-9 or any(w < 0 for _, w in ensemble):
        raise ValueError("ensemble weights must be non-negative and sum to 1")
    return ensemble


def _ensemble_spectrum(
    ensemble: Ensemble, grid: np.ndarray, p: DispersiveParams
) -> SpectrumCurve:
    photons = np.zeros(len(grid))
    for s, w in ensemble:
        photons += w * _photon_sweep(qubit_moments(s), grid, p)
    return SpectrumCurve(grid, photons, photons / p.peak_height)


def _reads(curve: SpectrumCurve, p: DispersiveParams) -> dict[str, float]:
    shifts = all_shifts(p)
    out = {}
    for i, label in enumerate(BASIS_LABELS):
        j = int(np.argmin(np.abs(curve.detunings - shifts[i])))
        out[label] = float(curve.normalized[j])
    return out


def verify_ghz_two_step(
    state,
    p: DispersiveParams,
    grid: np.ndarray | None = None,
) -> TwoStepVerification:
    """Two spectral measurements distinguishing a GHZ state from a mixture.

    Step 1 is the raw spectrum: a GHZ state (or the 50/50 mixture of its
    branches) shows two half-height peaks at the extreme shifts.  Step 2
    rotates each qubit a quarter turn (after mapping the +i relative
    phase away on qubit 1) and sweeps again: a coherent GHZ collapses
    onto four quarter-height peaks, a mixture spreads over eight.

    Accepts a single ThreeQubitState or an (state, weight) ensemble.
    Verdicts: 'ghz-consistent', 'mixture', 'inconclusive'.
    """
    if grid is None:
        grid = default_detuning_grid(p)
    ensemble = _as_ensemble(state)
    curve_raw = _ensemble_spectrum(ensemble, grid, p)

    rotated: Ensemble = []
    for s, w in ensemble:
        out = apply_single(PHASE_FIX_GATE, 1, s)
        for q in (1, 2, 3):
            out = apply_single(COHERENCE_GATE, q, out)
        rotated.append((out, w))
    curve_rotated = _ensemble_spectrum(rotated, grid, p)

    reads_raw = _reads(curve_raw, p)
    reads_rotated = _reads(curve_rotated, p)

    peaks_raw = {k for k, v in reads_raw.items() if v >= PEAK_THRESHOLD}
    peaks_rot = {k for k, v in reads_rotated.items() if v >= PEAK_THRESHOLD}

    two_peaks_ok = peaks_raw == {"000", "111"} and all(
        abs(reads_raw[k] - 0.5) <= TWO_PEAK_TOL for k in ("000", "111")
    )
    even_quadruple = {"000", "011", "101", "110"}
    four_peaks_ok = peaks_rot == even_quadruple and all(
        abs(reads_rotated[k] - 0.25) <= TWO_PEAK_TOL for k in even_quadruple
    )

    if two_peaks_ok and four_peaks_ok:
        verdict = "ghz-consistent"
    elif two_peaks_ok and len(peaks_rot) == 8:
        verdict = "mixture"
    else:
        verdict = "inconclusive"
    return TwoStepVerification(
        curve_raw=curve_raw,
        curve_rotated=curve_rotated,
        reads_raw=reads_raw,
        reads_rotated=reads_rotated,
        verdict=verdict,
    )
