"""Standard single-qubit operators and two-qubit reference states.

Two-qubit basis convention used everywhere in this package: the joint
basis index is 2 * (first-particle index) + (second-particle index), i.e.
``numpy.kron(first, second)``.
"""

from __future__ import annotations

import numpy as np


def _locked(a) -> np.ndarray:
    arr = np.array(a, dtype=complex)
    arr.setflags(write=False)
    return arr


SIGMA_X = _locked([[0, 1], [1, 0]])
SIGMA_Y = _locked([[0, -1j], [1j, 0]])
SIGMA_Z = _locked([[1, 0], [0, -1]])
IDENTITY2 = _locked([[1, 0], [0, 1]])

PAULI_BASIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

KET_UP = _locked([1, 0])
KET_DOWN = _locked([0, 1])

# (|01> - |10>) / sqrt(2)
SINGLET = _locked(np.array([0, 1, -1, 0]) / np.sqrt(2.0))
# (|00> + |11>) / sqrt(2)
PHI_PLUS = _locked(np.array([1, 0, 0, 1]) / np.sqrt(2.0))


def bloch_vector(theta: float, phi: float) -> np.ndarray:
    """Unit vector on the sphere at polar angle theta, azimuth phi."""
    return np.array(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]
    )


def bloch_matrix(theta: float, phi: float) -> np.ndarray:
    """n . sigma for the unit vector n(theta, phi); Hermitian with spectrum {-1, +1}."""
    nx, ny, nz = bloch_vector(theta, phi)
    return nx * SIGMA_X + ny * SIGMA_Y + nz * SIGMA_Z


def bloch_components(m) -> tuple[float, float, float]:
    """Pauli components (tr(sigma_k M) / 2) of a 2x2 matrix."""
    a = np.asarray(m, dtype=complex)
    return (
        float(np.trace(SIGMA_X @ a).real / 2.0),
        float(np.trace(SIGMA_Y @ a).real / 2.0),
        float(np.trace(SIGMA_Z @ a).real / 2.0),
    )
