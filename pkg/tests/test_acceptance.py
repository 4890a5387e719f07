"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import json
import math
import time

import numpy as np
import pytest

from mermincav import (
    DispersiveParams,
    LocalAngles,
    MerminSettings,
    PrepParams,
    ThreeQubitState,
    basis_state,
    correlation_closed_form,
    encode_locals,
    fidelity,
    fock_evolution_oracle,
    ghz_state,
    joint_probabilities,
    lindblad_steady_oracle,
    lorentzian_mixture,
    parity_correlation,
    prepare_ghz,
    qubit_moments,
    run_mermin,
    steady_photon_number,
    steady_state_cavity_moments,
    transmission_spectrum,
    verify_ghz_two_step,
)
from mermincav.cli import main
from mermincav.qubits import BASIS_LABELS
from mermincav.spectroscopy import all_shifts, extract_probabilities

from conftest import random_state_array

TWO_PI = 2.0 * math.pi


def report(criterion: int, message: str):
    print(f"ACCEPTANCE CRITERION {criterion}: PASS - {message}")


def reads_at_shifts(curve, params) -> dict[str, float]:
    shifts = all_shifts(params)
    return {
        label: float(
            curve.normalized[np.argmin(np.abs(curve.detunings - shifts[i]))]
        )
        for i, label in enumerate(BASIS_LABELS)
    }


def test_criterion_1_ghz_preparation(prep_plus_branch):
    start = time.perf_counter()
    state, fid = prepare_ghz(prep_plus_branch, 1e-9)
    elapsed = time.perf_counter() - start
    from mermincav import ghz_schedule

    sched = ghz_schedule(prep_plus_branch, 1e-9)
    assert sched.t == pytest.approx(0.1, rel=1e-12)          # 100 ns
    wrapped_rabi = math.remainder(prep_plus_branch.omega_rabi * sched.t, TWO_PI)
    assert abs(abs(wrapped_rabi) - 0.75 * math.pi) <= 1e-9   # Omega*t at 3 pi/4
    assert fid >= 1.0 - 1e-9
    assert elapsed < 1.0
    report(1, f"fidelity {fid:.12f} at t = 100 ns ({elapsed:.2f} s)")


def test_criterion_2_rwa_oracle(prep_plus_branch):
    start = time.perf_counter()
    state10, _ = fock_evolution_oracle(prep_plus_branch, 0.1, 12, 4e-5)
    fid10 = fidelity(ghz_state(), state10)
    # halving the step must not move the fidelity by 1e-4
    state10b, _ = fock_evolution_oracle(prep_plus_branch, 0.1, 12, 2e-5)
    fid10b = fidelity(ghz_state(), state10b)
    assert abs(fid10 - fid10b) < 1e-4

    ratio2 = PrepParams(
        g=TWO_PI * 25.0, delta=-TWO_PI * 250.0, epsilon=TWO_PI * 5037.5
    )
    assert ratio2.omega_rabi / ratio2.delta == pytest.approx(2.015, rel=1e-12)
    state2, _ = fock_evolution_oracle(ratio2, 0.1, 12, 4e-5)
    fid2 = fidelity(ghz_state(), state2)
    elapsed = time.perf_counter() - start

    assert fid10b >= 0.99
    assert fid10b > fid2
    assert elapsed < 120.0
    report(2, f"fidelity {fid10b:.5f} at ratio 10 vs {fid2:.5f} at ratio 2 "
              f"({elapsed:.0f} s)")


def test_criterion_3_ghz_spectrum(fig1_params, fig1_grid):
    start = time.perf_counter()
    curve = transmission_spectrum(ghz_state(), fig1_grid, fig1_params)
    elapsed = time.perf_counter() - start
    reads = reads_at_shifts(curve, fig1_params)
    assert reads["000"] == pytest.approx(0.5, abs=0.01)
    assert reads["111"] == pytest.approx(0.5, abs=0.01)
    others = [reads[label] for label in BASIS_LABELS if label not in ("000", "111")]
    assert max(others) <= 1e-3
    peaks = [label for label in BASIS_LABELS if reads[label] > 0.05]
    assert peaks == ["000", "111"]
    assert elapsed < 30.0
    report(3, f"two peaks at -630/+630 MHz reading {reads['000']:.4f}/"
              f"{reads['111']:.4f} ({elapsed:.2f} s)")


def test_criterion_4_coherence_rotation(fig1_params, fig1_grid):
    result = verify_ghz_two_step(ghz_state(), fig1_params, fig1_grid)
    assert result.verdict == "ghz-consistent"
    expected_mhz = {"000": -630.0, "110": -70.0, "101": 170.0, "011": 530.0}
    for label, mhz in expected_mhz.items():
        assert chi_shift_mhz(label, fig1_params) == pytest.approx(mhz)
        assert result.reads_rotated[label] == pytest.approx(0.25, abs=0.01)

    mixture = verify_ghz_two_step(
        [(basis_state("000"), 0.5), (basis_state("111"), 0.5)],
        fig1_params,
        fig1_grid,
    )
    assert mixture.verdict == "mixture"
    for label in BASIS_LABELS:
        assert mixture.reads_rotated[label] == pytest.approx(0.125, abs=0.01)
    report(4, "four 0.25 peaks for the coherent state, eight 0.125 peaks "
              "for the 50/50 mixture")


def chi_shift_mhz(label: str, params) -> float:
    from mermincav import chi_shift

    return chi_shift(label, params) / TWO_PI


def test_criterion_5_oracle_exactness(fig1_params, fig1_grid, rng):
    start = time.perf_counter()
    shifts = all_shifts(fig1_params)
    kappa, eps = fig1_params.kappa, fig1_params.epsilon_ro
    worst = 0.0
    for _ in range(20):
        state = ThreeQubitState(random_state_array(rng))
        curve = transmission_spectrum(state, fig1_grid, fig1_params)
        probs = joint_probabilities(state).p
        analytic = (
            eps**2 / ((fig1_grid[:, None] - shifts[None, :]) ** 2 + kappa**2 / 4.0)
        ) @ probs
        worst = max(worst, float(np.max(np.abs(curve.photon_numbers - analytic) / analytic)))
    assert worst <= 1e-10
    # the broadcast oracle above is lorentzian_mixture evaluated gridwise
    probs_obj = joint_probabilities(ghz_state())
    for d in (0.0, shifts[0], TWO_PI * 123.4):
        direct = lorentzian_mixture(probs_obj, float(d), fig1_params)
        bc = float((eps**2 / ((d - shifts) ** 2 + kappa**2 / 4.0)) @ probs_obj.p)
        assert direct == pytest.approx(bc, rel=1e-14)

    ghz = ghz_state()
    qm = qubit_moments(ghz)
    half = kappa / 2.0
    detunings = [
        shifts[0], shifts[0] + half, shifts[7], shifts[7] - half,
        shifts[7] - TWO_PI * 5.0,
    ]
    worst_lindblad = 0.0
    for delta in detunings:
        moments_value = steady_photon_number(
            steady_state_cavity_moments(float(delta), qm, fig1_params), fig1_params
        )
        oracle_value = lindblad_steady_oracle(ghz, float(delta), fig1_params, 6)
        worst_lindblad = max(
            worst_lindblad, abs(oracle_value - moments_value) / moments_value
        )
    elapsed = time.perf_counter() - start
    assert worst_lindblad <= 1e-6
    assert elapsed < 300.0
    report(5, f"sweep vs Lorentzian mixture rel err {worst:.2e}; Lindblad vs "
              f"moments rel err {worst_lindblad:.2e} ({elapsed:.0f} s)")


def test_criterion_6_mermin_values(fig1_params, fig1_grid):
    set1 = MerminSettings(
        theta=LocalAngles(0.0, math.pi / 4, math.pi / 2),
        theta_prime=LocalAngles(math.pi / 4, math.pi / 4, math.pi),
    )
    set2 = MerminSettings(
        theta=LocalAngles(math.pi / 4, 0.0, 0.0),
        theta_prime=LocalAngles(3 * math.pi / 4, math.pi / 2, math.pi / 2),
    )
    r1 = run_mermin(ghz_state(), set1, "both", fig1_params, fig1_grid)
    assert r1.q_exact == pytest.approx(math.sqrt(2.0) + 1.0, abs=1e-10)
    assert 2.388 <= r1.q_spectral <= 2.428
    assert 0.0 < r1.delta_q <= 0.05

    r2 = run_mermin(ghz_state(), set2, "both", fig1_params, fig1_grid)
    assert r2.q_exact == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-10)
    assert 2.796 <= r2.q_spectral <= 2.836
    assert 0.0 < r2.delta_q <= 0.05
    report(6, f"set 1: q_spectral {r1.q_spectral:.4f} (dQ {r1.delta_q:.2e}); "
              f"set 2: q_spectral {r2.q_spectral:.4f} (dQ {r2.delta_q:.2e})")


def test_criterion_7_equivalence_suite(fig1_params, fig1_grid, rng):
    start = time.perf_counter()
    worst_exact = 0.0
    worst_spectral = 0.0
    for _ in range(200):
        angles = LocalAngles(*rng.uniform(0.0, TWO_PI, size=3))
        encoded = encode_locals(ghz_state(), angles)
        brute = parity_correlation(joint_probabilities(encoded))
        worst_exact = max(
            worst_exact, abs(brute - correlation_closed_form(angles))
        )
        curve = transmission_spectrum(encoded, fig1_grid, fig1_params)
        spectral = parity_correlation(
            extract_probabilities(curve, fig1_params).probabilities()
        )
        worst_spectral = max(worst_spectral, abs(spectral - brute))
    elapsed = time.perf_counter() - start
    assert worst_exact <= 1e-10
    assert worst_spectral <= 0.01
    report(7, f"200 angle triples: closed-form gap {worst_exact:.2e}, "
              f"spectral gap {worst_spectral:.2e} ({elapsed:.0f} s)")


def test_criterion_8_determinism(tmp_path):
    config = {
        "schema": 1,
        "readout": {
            "gamma_mhz": [50.0, 230.0, 350.0],
            "kappa_mhz": 1.69,
            "epsilon_mhz": 0.1,
        },
        "grid": {"min_mhz": -700.0, "max_mhz": 700.0, "step_mhz": 0.1},
        "state": "ghz",
        "settings": [
            {
                "theta": ["0", "1/4 pi", "1/2 pi"],
                "theta_prime": ["1/4 pi", "1/4 pi", "pi"],
            }
        ],
        "mode": "both",
    }
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps(config))
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["mermin", "--config", str(cfg), "--out", str(out1)]) == 0
    assert main(["mermin", "--config", str(cfg), "--out", str(out2)]) == 0
    compared = 0
    for path1 in sorted(out1.iterdir()):
        if path1.suffix in (".csv", ".json"):
            assert path1.read_bytes() == (out2 / path1.name).read_bytes(), path1.name
            compared += 1
    assert compared == 5  # four correlator CSVs + the report JSON
    report(8, f"{compared} JSON/CSV artifacts byte-identical across two runs")
