"""Command-line front end.

Subcommands (all take ``--config`` pointing at a schema-1 JSON file and
write artifacts under ``--out``):

* ``ghz-prep``  - commensurate-time schedule, prepared-state fidelity,
  optional brute-force Fock-space check; writes ghz_prep.json.
* ``spectrum``  - transmission sweep for the configured state; writes
  spectrum.csv and spectrum.png.
* ``verify``    - two-step GHZ confirmation; writes verify_raw.csv,
  verify_rotated.csv, verify.png and verify.json.
* ``mermin``    - full Mermin test per settings entry; writes
  mermin_report.json plus four per-correlator CSVs and a panel figure
  per entry.
* ``validate``  - dispersive-regime ratio report; writes validate.json.

Frequencies in the config are linear MHz (converted to angular units
once, at parse time).  Exit codes: 0 success, 2 validation failure,
3 numerical failure.
"""

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .artifacts import write_json_report, write_spectrum_csv
from .config import ExperimentConfig, load_config
from .errors import ConfigError, MerminCavError
from .experiment import run_mermin, verify_ghz_two_step
from .ghzprep import (
    closed_form_propagator,
    evolution_coefficients,
    fock_evolution_oracle,
    ghz_schedule,
    prepare_ghz,
)
from .plotting import render_spectra_grid, render_spectrum
from .qubits import fidelity, ghz_state
from .spectroscopy import default_detuning_grid, dispersive_validity, transmission_spectrum

TWO_PI = 2.0 * math.pi


def _complex_pairs(amplitudes) -> list[list[float]]:
    return [[float(a.real), float(a.imag)] for a in amplitudes]


def _grid(config: ExperimentConfig):
    if config.grid is not None:
        return config.grid
    return default_detuning_grid(config.require_readout())


def _cmd_ghz_prep(config: ExperimentConfig, out: Path) -> int:
    p = config.require_prep()
    schedule = ghz_schedule(p, config.schedule_tol)
    state, fid = prepare_ghz(p, config.schedule_tol)
    coeffs = evolution_coefficients(schedule.t, p)
    payload = {
        "schema": 1,
        "schedule": {
            "t_us": schedule.t,
            "n": schedule.n,
            "k": schedule.k,
            "m": schedule.m,
            "phase_errors_rad": list(schedule.phase_errors),
            "phase_branch": schedule.phase_branch,
        },
        "strong_driving_ratio": p.strong_driving_ratio,
        "coefficients": {
            "a_pair": [coeffs.a_pair.real, coeffs.a_pair.imag],
            "b": [coeffs.b.real, coeffs.b.imag],
            "c": [coeffs.c.real, coeffs.c.imag],
        },
        "state": _complex_pairs(state.amplitudes),
        "fidelity_ghz": fid,
    }
    if config.oracle.enabled:
        oracle_state, purity = fock_evolution_oracle(
            p, schedule.t, config.oracle.n_trunc, config.oracle.dt
        )
        closed = closed_form_propagator(schedule.t, p)
        from .qubits import ThreeQubitState

        closed_state = ThreeQubitState(closed[:, 0].copy())
        payload["oracle"] = {
            "n_trunc": config.oracle.n_trunc,
            "dt_us": config.oracle.dt,
            "purity": purity,
            "fidelity_vs_closed_form": fidelity(closed_state, oracle_state),
            "fidelity_vs_ghz": fidelity(ghz_state(), oracle_state),
        }
    write_json_report(payload, out / "ghz_prep.json")
    print(
        f"schedule: t = {schedule.t * 1e3:.6g} ns, n = {schedule.n}, "
        f"k = {schedule.k}, m = {schedule.m}, branch = {schedule.phase_branch:+d}"
    )
    print(f"fidelity vs (|000> + i|111>)/sqrt2: {fid:.12f}")
    if config.oracle.enabled:
        print(
            f"oracle fidelity vs closed form: "
            f"{payload['oracle']['fidelity_vs_closed_form']:.6f} "
            f"(purity {payload['oracle']['purity']:.6f})"
        )
    return 0


def _cmd_spectrum(config: ExperimentConfig, out: Path) -> int:
    p = config.require_readout()
    curve = transmission_spectrum(config.state(), _grid(config), p)
    write_spectrum_csv(curve, out / "spectrum.csv")
    render_spectrum(curve, out / "spectrum.png", title=f"state: {config.state_spec}")
    peak = curve.detunings[curve.normalized.argmax()] / TWO_PI
    print(f"spectrum.csv written; tallest peak at delta = {peak:g} MHz")
    return 0


def _cmd_verify(config: ExperimentConfig, out: Path) -> int:
    p = config.require_readout()
    result = verify_ghz_two_step(config.state(), p, _grid(config))
    write_spectrum_csv(result.curve_raw, out / "verify_raw.csv")
    write_spectrum_csv(result.curve_rotated, out / "verify_rotated.csv")
    render_spectra_grid(
        [result.curve_raw, result.curve_rotated],
        ["raw state", "after coherence rotation"],
        out / "verify.png",
    )
    write_json_report(
        {
            "schema": 1,
            "verdict": result.verdict,
            "reads_raw": result.reads_raw,
            "reads_rotated": result.reads_rotated,
        },
        out / "verify.json",
    )
    print(f"verdict: {result.verdict}")
    return 0


def _cmd_mermin(config: ExperimentConfig, out: Path, mode: str | None) -> int:
    p = config.require_readout()
    settings = config.require_settings()
    state = config.state()
    grid = _grid(config)
    run_mode = mode or config.mode
    reports = []
    for i, entry in enumerate(settings, start=1):
        report = run_mermin(state, entry, run_mode, p, grid)
        reports.append(report.to_json_dict())
        if report.curves is not None:
            curves = list(report.curves)
            titles = [
                "E(theta'1, theta2, theta3)",
                "E(theta1, theta'2, theta3)",
                "E(theta1, theta2, theta'3)",
                "E(theta'1, theta'2, theta'3)",
            ]
            for k, curve in enumerate(curves, start=1):
                write_spectrum_csv(curve, out / f"mermin_set{i}_corr{k}.csv")
            render_spectra_grid(
                curves, titles, out / f"mermin_set{i}.png",
                suptitle=f"settings entry {i}",
            )
        line = f"set {i}: q_exact = {report.q_exact:.6f}"
        if report.q_spectral is not None:
            line += (
                f", q_spectral = {report.q_spectral:.6f}"
                f", delta_q = {report.delta_q:+.6f}"
            )
        print(line)
    write_json_report({"schema": 1, "reports": reports}, out / "mermin_report.json")
    return 0


def _cmd_validate(config: ExperimentConfig, out: Path) -> int:
    p = config.require_readout()
    report = dispersive_validity(p)
    payload = {
        "schema": 1,
        "ok": report.ok,
        "threshold": 0.1,
        "ratios": [
            {"name": r.name, "value": r.value, "flagged": r.flagged}
            for r in report.ratios
        ],
    }
    write_json_report(payload, out / "validate.json")
    for r in report.ratios:
        status = "FLAGGED" if r.flagged else "ok"
        print(f"{r.name} = {r.value:.6g}  [{status}]")
    if not report.ok:
        print("dispersive-regime validation FAILED", file=sys.stderr)
        return 2
    print("dispersive-regime validation passed")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mermincav",
        description=(
            "Simulate three-qubit Mermin tests in a driven cavity: one-step "
            "GHZ preparation, dispersive spectral joint-measurement, and Q "
            "evaluation.  Config frequencies are linear MHz; they are "
            "multiplied by 2*pi into angular units exactly once at parse "
            "time."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("ghz-prep", "schedule search, closed-form preparation, optional Fock-space check"),
        ("spectrum", "transmission sweep for the configured state"),
        ("verify", "two-step spectral GHZ confirmation"),
        ("mermin", "full Mermin test for each settings entry"),
        ("validate", "dispersive-regime ratio report"),
    ):
        cmd = sub.add_parser(name, help=helptext)
        cmd.add_argument("--config", required=True, help="path to schema-1 JSON config")
        cmd.add_argument("--out", default=".", help="directory for artifacts")
        if name == "mermin":
            cmd.add_argument(
                "--mode",
                choices=("exact", "spectral", "both"),
                default=None,
                help="override the config's acquisition mode",
            )
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "ghz-prep":
            return _cmd_ghz_prep(config, out)
        if args.command == "spectrum":
            return _cmd_spectrum(config, out)
        if args.command == "verify":
            return _cmd_verify(config, out)
        if args.command == "mermin":
            return _cmd_mermin(config, out, args.mode)
        if args.command == "validate":
            return _cmd_validate(config, out)
        raise AssertionError(f"unhandled command {args.command}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MerminCavError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
