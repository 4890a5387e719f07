import numpy as np
import pytest

from mermincav import NotHermitianError, SingularMatrixError
from mermincav.numerics import (
    kron,
    solve_linear,
    unitarity_defect,
    unitary_from_hermitian,
)
from mermincav.qubits import pauli

I2 = np.eye(2)


def test_kron_identity():
    assert np.array_equal(kron(I2, I2), np.eye(4))


def test_kron_first_factor_most_significant():
    # sigma_z = diag(-1, +1), so sigma_z (x) I acts on the leading qubit
    assert np.array_equal(
        kron(pauli("z"), I2), np.diag([-1, -1, 1, 1]).astype(complex)
    )


def test_kron_mixed_product_rule(rng):
    for _ in range(5):
        a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
        lhs = kron(a, b) @ kron(c, d)
        rhs = kron(a @ c, b @ d)
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_kron_associative_on_integer_matrices(rng):
    mats = [rng.integers(-3, 4, size=(2, 2)).astype(complex) for _ in range(3)]
    a, b, c = mats
    assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))


def test_kron_rejects_nonfinite():
    bad = np.array([[1.0, np.inf], [0.0, 1.0]])
    with pytest.raises(ValueError):
        kron(bad, I2)


def test_expm_zero_matrix_is_identity():
    u = unitary_from_hermitian(np.zeros((4, 4)), 0.37)
    assert np.max(np.abs(u - np.eye(4))) < 1e-14


def test_expm_sigma_x_pi_is_minus_identity():
    u = unitary_from_hermitian(pauli("x"), np.pi)
    assert np.max(np.abs(u + I2)) < 1e-12


def test_expm_random_hermitian_is_unitary(rng):
    z = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    h = z + z.conj().T
    u = unitary_from_hermitian(h, 0.37)
    assert unitarity_defect(u) < 1e-10


def test_expm_group_property(rng):
    z = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    h = z + z.conj().T
    u1 = unitary_from_hermitian(h, 0.21)
    u2 = unitary_from_hermitian(h, 0.56)
    u12 = unitary_from_hermitian(h, 0.77)
    assert np.max(np.abs(u1 @ u2 - u12)) < 1e-10


def test_expm_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        unitary_from_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]), 1.0)


def test_solve_identity():
    b = np.array([1.0, 2.0, -3.0 + 1j])
    assert np.array_equal(solve_linear(np.eye(3), b), b)


def test_solve_scaled_identity():
    x = solve_linear(2.0 * np.eye(8), np.ones(8))
    assert np.max(np.abs(x - 0.5)) < 1e-15


def test_solve_residual_bound(rng):
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8)) + 4.0 * np.eye(8)
    b = rng.normal(size=8) + 1j * rng.normal(size=8)
    x = solve_linear(a, b)
    residual = np.max(np.abs(a @ x - b))
    assert residual < 1e-10 * max(1.0, np.max(np.abs(b)))


def test_solve_rejects_singular():
    with pytest.raises(SingularMatrixError):
        solve_linear(np.array([[1.0, 1.0], [1.0, 1.0]]), np.ones(2))


def test_solve_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        solve_linear(np.eye(3), np.ones(4))
