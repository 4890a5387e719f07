"""Deterministic on-disk artifacts: spectrum CSV files and report JSON.

Formats are fixed interfaces: CSV header ``delta_mhz,photon_number,
normalized`` with LF line endings and 17-significant-digit decimals
(lossless for float64), detuning reported as linear frequency in MHz.
Identical inputs produce byte-identical files.
"""

import json
import math
from pathlib import Path

import numpy as np

from .spectroscopy import SpectrumCurve

TWO_PI = 2.0 * math.pi

CSV_HEADER = "delta_mhz,photon_number,normalized"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def spectrum_csv_text(curve: SpectrumCurve) -> str:
    lines = [CSV_HEADER]
    mhz = curve.detunings / TWO_PI
    for d, ph, no in zip(mhz, curve.photon_numbers, curve.normalized):
        lines.append(f"{_fmt(d)},{_fmt(ph)},{_fmt(no)}")
    return "\n".join(lines) + "\n"


def write_spectrum_csv(curve: SpectrumCurve, path) -> Path:
    path = Path(path)
    path.write_text(spectrum_csv_text(curve), encoding="ascii", newline="\n")
    return path


def read_spectrum_csv(path) -> SpectrumCurve:
    text = Path(path).read_text(encoding="ascii")
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"unexpected CSV header in {path}")
    rows = [line.split(",") for line in lines[1:] if line]
    data = np.array([[float(v) for v in row] for row in rows])
    return SpectrumCurve(
        detunings=TWO_PI * data[:, 0],
        photon_numbers=data[:, 1],
        normalized=data[:, 2],
    )


def write_json_report(payload: dict, path) -> Path:
    path = Path(path)
    text = json.dumps(payload, indent=2, sort_keys=True, allow_nan=False)
    path.write_text(text + "\n", encoding="ascii", newline="\n")
    return path
