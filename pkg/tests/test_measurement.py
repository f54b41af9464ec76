import numpy as np
import pytest
from conftest import planted_normal, random_state

from normalobs import (
    NotNormalized,
    ZeroProbabilityBranch,
    collapse,
    relabel,
    sample,
    spectral_decompose,
    spectral_distribution,
    stationarity_check,
)
from normalobs.measurement import StateVector
from normalobs.qubit import KET_DOWN, KET_UP, SIGMA_Z

SZ = spectral_decompose(SIGMA_Z)


def superposition(alpha: complex, beta: complex) -> StateVector:
    return StateVector(alpha * KET_UP + beta * KET_DOWN)


def test_state_vector_validation():
    with pytest.raises(NotNormalized):
        StateVector(np.array([1.0, 1.0]))
    psi = StateVector.normalized(np.array([3.0, 4.0]))
    assert np.allclose(psi.amplitudes, [0.6, 0.8])
    with pytest.raises(ValueError):
        StateVector.normalized(np.zeros(2))


def test_born_rule_read_off():
    alpha = np.sqrt(1.0 / 3.0)
    beta = np.sqrt(2.0 / 3.0)
    dist = spectral_distribution(SZ, superposition(alpha, beta))
    # canonical order puts eigenvalue -1 (spin down) first
    assert dist.eigenvalues == (-1.0, 1.0)
    assert dist.probabilities[0] == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert dist.probabilities[1] == pytest.approx(1.0 / 3.0, abs=1e-15)


def test_eigenstate_distribution_keeps_zero_branch():
    dist = spectral_distribution(SZ, StateVector(KET_UP))
    assert dist.probabilities == (0.0, 1.0)
    assert dist.outcomes[0].post_state is None
    assert np.allclose(dist.outcomes[1].post_state.amplitudes, KET_UP)


def test_complex_labels_share_projectors_with_sigma_z():
    # the projectors of F = sigma_z + iI are those of sigma_z
    from normalobs import from_commuting_pair

    f = from_commuting_pair(SIGMA_Z, np.eye(2))
    psi = superposition(1 / np.sqrt(2), 1 / np.sqrt(2))
    dist = spectral_distribution(f, psi)
    by_value = dict(zip(dist.eigenvalues, dist.probabilities))
    assert by_value[(-1 + 1j)] == pytest.approx(0.5, abs=1e-12)
    assert by_value[(1 + 1j)] == pytest.approx(0.5, abs=1e-12)
    # direct projection oracle
    p_up = np.outer(KET_UP, KET_UP.conj())
    assert np.linalg.norm(p_up @ psi.amplitudes) ** 2 == pytest.approx(0.5, abs=1e-12)


def test_born_probabilities_sum_to_one():
    rng = np.random.default_rng(50)
    for _ in range(1000):
        n = int(rng.choice([2, 3, 4, 8]))
        m, _ = planted_normal(rng, n, degenerate=bool(rng.integers(2)))
        obs = spectral_decompose(m)
        psi = StateVector(random_state(rng, n))
        dist = spectral_distribution(obs, psi)
        assert sum(dist.probabilities) == pytest.approx(1.0, abs=1e-10)
        assert all(p >= 0.0 for p in dist.probabilities)


def test_relabeling_leaves_statistics_bitwise_identical():
    rng = np.random.default_rng(51)
    for _ in range(50):
        n = int(rng.integers(2, 6))
        m, _ = planted_normal(rng, n, degenerate=bool(rng.integers(2)))
        obs = spectral_decompose(m)
        labels = {g: complex(g + 1, -g) for g in range(len(obs.eigenspaces))}
        relabeled = relabel(obs, labels)
        psi = StateVector(random_state(rng, n))
        original = spectral_distribution(obs, psi)
        changed = spectral_distribution(relabeled, psi)
        for a, b in zip(original.outcomes, changed.outcomes):
            assert a.probability == b.probability  # bitwise equal floats
            if a.post_state is None:
                assert b.post_state is None
            else:
                assert (
                    a.post_state.amplitudes.tobytes()
                    == b.post_state.amplitudes.tobytes()
                )


def test_sample_eigenstate_is_deterministic():
    for seed in (0, 1, 123456789):
        record = sample(SZ, StateVector(KET_UP), 500, seed)
        assert record.counts == {0: 0, 1: 500}


def test_sample_binomial_statistics():
    psi = superposition(1 / np.sqrt(2), 1 / np.sqrt(2))
    shots = 100_000
    sigma = np.sqrt(shots * 0.25)
    for seed in (42, 43):
        record = sample(SZ, psi, shots, seed)
        assert sum(record.counts.values()) == shots
        for g in (0, 1):
            assert abs(record.counts[g] - shots / 2) <= 5 * sigma


def test_sample_identical_seeds_identical_counts():
    psi = superposition(0.8, 0.6)
    a = sample(SZ, psi, 2000, 7)
    b = sample(SZ, psi, 2000, 7)
    assert a.counts == b.counts
    c = sample(SZ, psi, 2000, 8)
    assert c.counts != a.counts


def test_sample_rejects_zero_shots():
    with pytest.raises(ValueError):
        sample(SZ, StateVector(KET_UP), 0, 1)


def test_collapse_examples():
    psi = superposition(1 / np.sqrt(2), 1 / np.sqrt(2))
    up_branch = collapse(SZ, psi, 1)
    assert np.allclose(up_branch.amplitudes, KET_UP, atol=1e-15)
    with pytest.raises(ZeroProbabilityBranch):
        collapse(SZ, StateVector(KET_UP), 0)


def test_collapse_is_repeatable():
    rng = np.random.default_rng(52)
    for _ in range(100):
        n = int(rng.integers(2, 6))
        m, _ = planted_normal(rng, n, degenerate=bool(rng.integers(2)))
        obs = spectral_decompose(m)
        psi = StateVector(random_state(rng, n))
        dist = spectral_distribution(obs, psi)
        g = int(np.argmax(dist.probabilities))
        collapsed = collapse(obs, psi, g)
        again = spectral_distribution(obs, collapsed)
        assert again.probabilities[g] == pytest.approx(1.0, abs=1e-12)


def test_stationarity_check():
    psi = superposition(1 / np.sqrt(2), 1 / np.sqrt(2))
    assert stationarity_check(SZ, psi, 100, seed=3)
    assert stationarity_check(SZ, StateVector(KET_UP), 100, seed=4)
    assert stationarity_check(SZ, psi, 1, seed=5)


def test_stationarity_check_random_observables():
    rng = np.random.default_rng(53)
    for trial in range(100):
        n = int(rng.integers(2, 5))
        m, _ = planted_normal(rng, n, degenerate=bool(rng.integers(2)))
        obs = spectral_decompose(m)
        psi = StateVector(random_state(rng, n))
        assert stationarity_check(obs, psi, 100, seed=trial)
