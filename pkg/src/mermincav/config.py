"""Configuration ingestion for the CLI.

The config file is JSON (versioned, ``"schema": 1``).  All user-facing
frequencies are linear MHz, matching how hardware parameters are quoted;
the single multiplication by 2*pi into angular units happens here and
nowhere else.  Angles may be plain numbers (radians) or strings of the
form ``"p/q pi"`` so exact rational multiples of pi survive parsing.
"""

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, ParseError, ZeroNormError
from .ghzprep import PrepParams
from .qubits import BASIS_LABELS, LocalAngles, ThreeQubitState, basis_index
from .experiment import MerminSettings
from .spectroscopy import DispersiveParams

TWO_PI = 2.0 * math.pi

_ANGLE_RE = re.compile(
    r"^\s*([+-])?\s*(?:(\d+(?:\.\d+)?)(?:\s*/\s*(\d+(?:\.\d+)?))?)?\s*(pi)?\s*$"
)


def parse_angle(value) -> float:
    """Radians from a number or a string like '3/4 pi', 'pi', '0.25'."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        if not math.isfinite(value):
            raise ParseError(f"angle must be finite, got {value!r}")
        return float(value)
    if not isinstance(value, str):
        raise ParseError(f"cannot parse angle from {value!r}")
    m = _ANGLE_RE.match(value)
    if not m or (m.group(2) is None and m.group(4) is None):
        raise ParseError(f"cannot parse angle {value!r}")
    sign = -1.0 if m.group(1) == "-" else 1.0
    numerator = float(m.group(2)) if m.group(2) is not None else 1.0
    denominator = float(m.group(3)) if m.group(3) is not None else 1.0
    if denominator == 0.0:
        raise ParseError(f"zero denominator in angle {value!r}")
    scale = math.pi if m.group(4) else 1.0
    return sign * numerator / denominator * scale


_BASIS_RE = re.compile(r"^\|([01]{3})>$")


def state_spec_parse(text: str) -> ThreeQubitState:
    """State from a spec string.

    Accepted forms: 'ghz' for (|000> + i|111>)/sqrt 2, 'ghz-noi' for the
    phase-free superposition, a basis label '|ijk>', or eight
    comma-separated complex amplitudes (normalized on input).
    """
    if not isinstance(text, str):
        raise ParseError(f"state spec must be a string, got {type(text).__name__}")
    spec = text.strip()
    if spec == "ghz":
        amps = np.zeros(8, dtype=complex)
        amps[0], amps[7] = 1.0, 1j
    elif spec == "ghz-noi":
        amps = np.zeros(8, dtype=complex)
        amps[0] = amps[7] = 1.0
    elif (m := _BASIS_RE.match(spec)) is not None:
        amps = np.zeros(8, dtype=complex)
        amps[basis_index(m.group(1))] = 1.0
    elif "," in spec:
        parts = spec.split(",")
        if len(parts) != 8:
            raise ParseError(f"need 8 amplitudes, got {len(parts)}")
        try:
            amps = np.array([complex(part.strip()) for part in parts])
        except ValueError as exc:
            raise ParseError(f"bad amplitude in {text!r}: {exc}") from None
    else:
        raise ParseError(f"unknown state spec {text!r}")
    norm = float(np.linalg.norm(amps))
    if norm < 1e-12:
        raise ZeroNormError(f"state spec {text!r} has zero norm")
    return ThreeQubitState(amps / norm)


@dataclass(frozen=True)
class OracleOptions:
    enabled: bool
    n_trunc: int
    dt: float


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated configuration; sections a subcommand does not use may be
    absent and are only demanded on access."""

    prep: PrepParams | None
    schedule_tol: float
    oracle: OracleOptions
    readout: DispersiveParams | None
    grid: np.ndarray | None
    state_spec: str
    settings: list[MerminSettings]
    mode: str

    def require_prep(self) -> PrepParams:
        if self.prep is None:
            raise ConfigError("config has no 'prep' section")
        return self.prep

    def require_readout(self) -> DispersiveParams:
        if self.readout is None:
            raise ConfigError("config has no 'readout' section")
        return self.readout

    def require_settings(self) -> list[MerminSettings]:
        if not self.settings:
            raise ConfigError("config has no 'settings' entries")
        return self.settings

    def state(self) -> ThreeQubitState:
        return state_spec_parse(self.state_spec)


def _need(section: dict, key: str, where: str):
    if key not in section:
        raise ConfigError(f"missing key {key!r} in {where}")
    return section[key]


def _finite_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{where} must be finite, got {value!r}")
    return float(value)


def _mhz_triple(value, where: str) -> tuple[float, float, float]:
    if not isinstance(value, list) or len(value) != 3:
        raise ConfigError(f"{where} must be a list of three numbers")
    return tuple(TWO_PI * _finite_number(v, where) for v in value)


def _parse_prep(section: dict) -> tuple[PrepParams, float]:
    g = TWO_PI * _finite_number(_need(section, "g_mhz", "prep"), "prep.g_mhz")
    delta = TWO_PI * _finite_number(_need(section, "delta_mhz", "prep"), "prep.delta_mhz")
    epsilon = TWO_PI * _finite_number(_need(section, "epsilon_mhz", "prep"), "prep.epsilon_mhz")
    tol = _finite_number(section.get("schedule_tol_rad", 1e-9), "prep.schedule_tol_rad")
    try:
        params = PrepParams(g=g, delta=delta, epsilon=epsilon)
    except ValueError as exc:
        raise ConfigError(f"bad prep parameters: {exc}") from None
    return params, tol


def _parse_oracle(section: dict) -> OracleOptions:
    return OracleOptions(
        enabled=bool(section.get("enabled", False)),
        n_trunc=int(section.get("n_trunc", 12)),
        dt=_finite_number(section.get("dt_us", 2e-5), "oracle.dt_us"),
    )


def _parse_readout(section: dict) -> DispersiveParams:
    gamma = _mhz_triple(_need(section, "gamma_mhz", "readout"), "readout.gamma_mhz")
    kappa = TWO_PI * _finite_number(_need(section, "kappa_mhz", "readout"), "readout.kappa_mhz")
    epsilon = TWO_PI * _finite_number(
        section.get("epsilon_mhz", 0.1), "readout.epsilon_mhz"
    )
    couplings = None
    detunings = None
    if "couplings_mhz" in section:
        couplings = _mhz_triple(section["couplings_mhz"], "readout.couplings_mhz")
    if "qubit_detunings_mhz" in section:
        detunings = _mhz_triple(
            section["qubit_detunings_mhz"], "readout.qubit_detunings_mhz"
        )
    try:
        return DispersiveParams(
            gamma=gamma,
            kappa=kappa,
            epsilon_ro=epsilon,
            couplings=couplings,
            qubit_detunings=detunings,
        )
    except ValueError as exc:
        raise ConfigError(f"bad readout parameters: {exc}") from None


def _parse_grid(section: dict) -> np.ndarray:
    lo = _finite_number(_need(section, "min_mhz", "grid"), "grid.min_mhz")
    hi = _finite_number(_need(section, "max_mhz", "grid"), "grid.max_mhz")
    step = _finite_number(_need(section, "step_mhz", "grid"), "grid.step_mhz")
    if step <= 0:
        raise ConfigError("grid.step_mhz must be positive")
    if hi <= lo:
        raise ConfigError("grid.max_mhz must exceed grid.min_mhz")
    npoints = int(round((hi - lo) / step)) + 1
    mhz = lo + step * np.arange(npoints)
    return TWO_PI * mhz


def _parse_settings(entries) -> list[MerminSettings]:
    if not isinstance(entries, list):
        raise ConfigError("'settings' must be a list")
    settings = []
    for i, entry in enumerate(entries):
        where = f"settings[{i}]"
        if not isinstance(entry, dict):
            raise ConfigError(f"{where} must be an object")
        theta = _need(entry, "theta", where)
        theta_prime = _need(entry, "theta_prime", where)
        for name, angles in (("theta", theta), ("theta_prime", theta_prime)):
            if not isinstance(angles, list) or len(angles) != 3:
                raise ConfigError(f"{where}.{name} must be a list of three angles")
        try:
            settings.append(
                MerminSettings(
                    theta=LocalAngles(*[parse_angle(a) for a in theta]),
                    theta_prime=LocalAngles(*[parse_angle(a) for a in theta_prime]),
                )
            )
        except ParseError as exc:
            raise ConfigError(f"bad angle in {where}: {exc}") from None
    return settings


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    if raw.get("schema") != 1:
        raise ConfigError(f"unsupported config schema {raw.get('schema')!r}")

    prep = None
    tol = 1e-9
    if "prep" in raw:
        prep, tol = _parse_prep(raw["prep"])
    oracle = _parse_oracle(raw.get("oracle", {}))
    readout = _parse_readout(raw["readout"]) if "readout" in raw else None
    grid = _parse_grid(raw["grid"]) if "grid" in raw else None
    mode = raw.get("mode", "both")
    if mode not in ("exact", "spectral", "both"):
        raise ConfigError(f"mode must be exact/spectral/both, got {mode!r}")
    state_spec = raw.get("state", "ghz")
    settings = _parse_settings(raw.get("settings", []))
    return ExperimentConfig(
        prep=prep,
        schedule_tol=tol,
        oracle=oracle,
        readout=readout,
        grid=grid,
        state_spec=state_spec,
        settings=settings,
        mode=mode,
    )
