"""Shared construction helpers for the test suite.

Everything here uses numpy directly (QR, eigh) rather than the package
under test, so planted matrices and oracle values stay independent of the
code they are checking.
"""

from __future__ import annotations

import numpy as np


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary from the QR of a complex Ginibre matrix."""
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(x)
    # normalize so the distribution is Haar, not QR-convention dependent
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (x + x.conj().T) / 2.0


def random_state(rng: np.random.Generator, n: int) -> np.ndarray:
    x = rng.normal(size=n) + 1j * rng.normal(size=n)
    return x / np.linalg.norm(x)


def planted_normal(
    rng: np.random.Generator, n: int, degenerate: bool = False
) -> tuple[np.ndarray, np.ndarray]:
    """Normal matrix with known complex spectrum: V diag(lam) V^dag.

    With ``degenerate`` the first eigenvalue is repeated once, so the
    matrix has a two-dimensional eigenspace.
    """
    lam = rng.normal(size=n) + 1j * rng.normal(size=n)
    if degenerate and n >= 2:
        lam[1] = lam[0]
    v = haar_unitary(rng, n)
    return v @ np.diag(lam) @ v.conj().T, lam


def perturbed_non_normal(
    rng: np.random.Generator, n: int, scale: float = 1e-3
) -> np.ndarray:
    """Planted normal matrix plus a perturbation large enough to break normality."""
    m, _ = planted_normal(rng, n)
    e = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return m + scale * e
