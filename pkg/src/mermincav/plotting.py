"""Headless figure rendering for the CLI report paths.

Every spectrum CSV the CLI writes gets a PNG rendered next to it; the
figures are for human inspection only (the CSV stays the quantitative
interface).
"""

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .spectroscopy import SpectrumCurve

TWO_PI = 2.0 * math.pi


def _panel(ax, curve: SpectrumCurve, title: str):
    ax.plot(curve.detunings / TWO_PI, curve.normalized, lw=0.8)
    ax.set_xlabel(r"$\delta/2\pi$ (MHz)")
    ax.set_ylabel("normalized transmission")
    ax.set_ylim(-0.02, 1.02)
    if title:
        ax.set_title(title, fontsize=10)


def render_spectrum(curve: SpectrumCurve, path, title: str = ""):
    fig, ax = plt.subplots(figsize=(6.0, 3.2))
    _panel(ax, curve, title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_spectra_grid(curves, titles, path, suptitle: str = ""):
    """One panel per curve, two columns."""
    n = len(curves)
    rows = (n + 1) // 2
    fig, axes = plt.subplots(rows, 2, figsize=(9.0, 2.8 * rows), squeeze=False)
    for i, (curve, title) in enumerate(zip(curves, titles)):
        _panel(axes[i // 2][i % 2], curve, title)
    for i in range(n, rows * 2):
        axes[i // 2][i % 2].axis("off")
    if suptitle:
        fig.suptitle(suptitle)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
