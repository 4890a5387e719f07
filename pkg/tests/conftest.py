import math

import numpy as np
import pytest

from mermincav import DispersiveParams, PrepParams

TWO_PI = 2.0 * math.pi


@pytest.fixture(scope="session")
def fig1_params() -> DispersiveParams:
    """Readout parameters used throughout: pulls 2pi x (50, 230, 350) MHz,
    cavity linewidth 2pi x 1.69 MHz, readout drive 2pi x 0.1 MHz."""
    return DispersiveParams(
        gamma=(TWO_PI * 50.0, TWO_PI * 230.0, TWO_PI * 350.0),
        kappa=TWO_PI * 1.69,
        epsilon_ro=TWO_PI * 0.1,
    )


@pytest.fixture(scope="session")
def fig1_grid() -> np.ndarray:
    """[-700, +700] MHz at 0.1 MHz steps, built MHz-first."""
    return TWO_PI * (0.1 * np.arange(-7000, 7001))


@pytest.fixture(scope="session")
def prep_plus_branch() -> PrepParams:
    """Drive red-detuned (delta < 0): prepares (|000> + i|111>)/sqrt 2."""
    return PrepParams(
        g=TWO_PI * 25.0, delta=-TWO_PI * 250.0, epsilon=TWO_PI * 25037.5
    )


@pytest.fixture(scope="session")
def prep_minus_branch() -> PrepParams:
    """Drive blue-detuned (delta > 0): prepares (|000> - i|111>)/sqrt 2."""
    return PrepParams(
        g=TWO_PI * 25.0, delta=TWO_PI * 250.0, epsilon=TWO_PI * 25037.5
    )


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)


def random_state_array(rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=8) + 1j * rng.normal(size=8)
    return z / np.linalg.norm(z)
