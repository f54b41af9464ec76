import numpy as np
import pytest
from conftest import haar_unitary, random_hermitian

from normalobs import (
    DimensionMismatch,
    NotHermitian,
    adjoint,
    commutator,
    frobenius_norm,
    hermitian_eig,
    is_hermitian,
    is_unitary,
    matmul,
    operator_norm,
)
from normalobs.qubit import SIGMA_X, SIGMA_Y, SIGMA_Z


def test_adjoint_examples():
    assert np.array_equal(adjoint(np.eye(2)), np.eye(2))
    assert np.array_equal(adjoint([[0, 1], [0, 0]]), [[0, 0], [1, 0]])
    assert np.array_equal(adjoint(np.diag([1j, -1j])), np.diag([-1j, 1j]))


def test_adjoint_is_involution():
    rng = np.random.default_rng(11)
    for _ in range(100):
        m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        assert np.array_equal(adjoint(adjoint(m)), m)


def test_adjoint_product_rule():
    # (MJ)^dag = J^dag M^dag up to rounding
    rng = np.random.default_rng(12)
    for _ in range(200):
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        j = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        left = adjoint(matmul(m, j))
        right = matmul(adjoint(j), adjoint(m))
        assert frobenius_norm(left - right) <= 1e-14 * frobenius_norm(left)


def test_matmul_examples():
    m = np.array([[1, 2j], [3, 4]], dtype=complex)
    assert np.array_equal(matmul(np.eye(2), m), m)
    assert np.array_equal(matmul(SIGMA_X, SIGMA_X), np.eye(2))
    assert np.array_equal(matmul(np.diag([2, 3]), np.diag([5, 7])), np.diag([10, 21]))


def test_matmul_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        matmul(np.eye(2), np.eye(3))


def test_commutator_examples():
    m = np.array([[1, 2], [3, 4j]], dtype=complex)
    assert np.array_equal(commutator(m, m), np.zeros((2, 2)))
    assert np.array_equal(commutator(SIGMA_X, SIGMA_Y), 2j * SIGMA_Z)
    assert np.array_equal(
        commutator(np.diag([1.5, -2]), np.diag([3j, 7])), np.zeros((2, 2))
    )


def test_frobenius_norm_examples():
    assert frobenius_norm(np.zeros((3, 3))) == 0.0
    assert frobenius_norm(np.eye(2)) == pytest.approx(np.sqrt(2), abs=1e-15)
    assert frobenius_norm([[0, 2], [0, 0]]) == 2.0


def test_operator_norm_examples():
    assert operator_norm(np.eye(3)) == pytest.approx(1.0, abs=1e-12)
    assert operator_norm([[0, 2], [0, 0]]) == pytest.approx(2.0, abs=1e-12)
    rng = np.random.default_rng(13)
    for n in (2, 3, 5):
        u = haar_unitary(rng, n)
        assert operator_norm(u) == pytest.approx(1.0, abs=1e-10)


def test_operator_norm_matches_lapack():
    # oracle: numpy's SVD-based spectral norm
    rng = np.random.default_rng(14)
    for _ in range(100):
        n = int(rng.integers(2, 7))
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        assert operator_norm(m) == pytest.approx(np.linalg.norm(m, 2), abs=1e-10)


def test_is_hermitian_is_unitary():
    assert is_hermitian(SIGMA_Z)
    assert not is_hermitian(np.diag([1j, -1j]))
    assert is_unitary(np.diag([1j, -1j]))
    assert not is_unitary(np.diag([2.0, 1.0]))


def test_hermitian_eig_diagonal():
    w, u = hermitian_eig(np.diag([3.0, 1.0]))
    assert np.allclose(w, [1.0, 3.0])
    assert np.array_equal(np.abs(u), [[0, 1], [1, 0]])


def test_hermitian_eig_pauli_x():
    w, u = hermitian_eig(SIGMA_X)
    assert np.allclose(w, [-1.0, 1.0], atol=1e-12)
    rec = (u * w) @ u.conj().T
    assert frobenius_norm(rec - SIGMA_X) <= 1e-12


def test_hermitian_eig_random_roundtrip():
    # oracle: reconstruction H ?= U diag(w) U^dag
    rng = np.random.default_rng(15)
    for _ in range(200):
        n = int(rng.integers(2, 9))
        h = random_hermitian(rng, n)
        w, u = hermitian_eig(h)
        scale = max(1.0, frobenius_norm(h))
        assert frobenius_norm((u * w) @ u.conj().T - h) <= 1e-10 * scale
        assert frobenius_norm(u.conj().T @ u - np.eye(n)) <= 1e-10
        assert np.all(np.diff(w) >= 0)


def test_hermitian_eig_six_by_six():
    rng = np.random.default_rng(16)
    h = random_hermitian(rng, 6)
    w, u = hermitian_eig(h)
    assert frobenius_norm((u * w) @ u.conj().T - h) <= 1e-10 * max(1.0, frobenius_norm(h))


def test_hermitian_eig_matches_lapack_eigenvalues():
    rng = np.random.default_rng(17)
    for _ in range(100):
        n = int(rng.integers(2, 7))
        h = random_hermitian(rng, n)
        w, _ = hermitian_eig(h)
        assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-10)


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_hermitian_eig_gauge_is_reproducible():
    rng = np.random.default_rng(18)
    h = random_hermitian(rng, 5)
    w1, u1 = hermitian_eig(h)
    w2, u2 = hermitian_eig(h.copy())
    assert np.array_equal(w1, w2)
    assert np.array_equal(u1, u2)
    # pivot entry of every column is real positive up to rounding
    for j in range(5):
        col = u1[:, j]
        k = next(i for i in range(5) if abs(col[i]) > 1e-8)
        assert abs(col[k].imag) <= 1e-14
        assert col[k].real > 0.0


def test_norm_inequalities():
    # ||M||_2 <= ||M||_F <= sqrt(n) ||M||_2
    rng = np.random.default_rng(19)
    for _ in range(1000):
        n = int(rng.integers(2, 5))
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        op = operator_norm(m)
        fro = frobenius_norm(m)
        assert op <= fro * (1 + 1e-12)
        assert fro <= np.sqrt(n) * op * (1 + 1e-12)


def test_commutator_norm_bound():
    # ||[M, J]|| <= 2 ||M|| ||J||
    rng = np.random.default_rng(20)
    for _ in range(1000):
        n = int(rng.integers(2, 5))
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        j = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        bound = 2.0 * operator_norm(m) * operator_norm(j)
        assert operator_norm(commutator(m, j)) <= bound * (1 + 1e-12) + 1e-12
