import numpy as np
import pytest

from jumptrack.algebra import (
    KET_E,
    KET_G,
    SIGMA,
    bloch_of,
    expm2,
    fidelity,
    is_density_matrix,
    normalize,
    project,
)
from jumptrack.dynamics import SystemParams, integrate_master, steady_state
from jumptrack.errors import ZeroVectorError


def random_state(rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return normalize(v)


def test_basis_convention():
    # |e> = (1,0)^T, sigma = |g><e| lowers e to g
    assert np.array_equal(SIGMA @ KET_E, KET_G)
    assert np.array_equal(SIGMA @ KET_G, np.zeros(2))


def test_normalize_examples():
    out = normalize(np.array([2.0, 0.0], dtype=complex))
    assert np.allclose(out, KET_E, atol=1e-15)
    out = normalize(np.array([1.0, 1.0], dtype=complex))
    assert np.allclose(out, np.array([1, 1]) / np.sqrt(2), atol=1e-15)
    with pytest.raises(ZeroVectorError):
        normalize(np.zeros(2, dtype=complex))


def test_normalize_idempotent_and_unit():
    rng = np.random.default_rng(1)
    for _ in range(50):
        s = random_state(rng)
        assert abs(np.vdot(s, s).real - 1.0) < 1e-12
        assert np.max(np.abs(normalize(s) - s)) < 1e-15


def test_fidelity_examples():
    assert fidelity(KET_E, KET_E) == pytest.approx(1.0)
    assert fidelity(KET_E, KET_G) == pytest.approx(0.0)
    plus = normalize(KET_E + KET_G)
    assert fidelity(KET_E, plus) == pytest.approx(0.5)


def test_fidelity_phase_invariant_and_symmetric():
    rng = np.random.default_rng(2)
    for _ in range(30):
        a, b = random_state(rng), random_state(rng)
        theta = rng.uniform(0, 2 * np.pi)
        assert fidelity(np.exp(1j * theta) * a, b) == pytest.approx(fidelity(a, b), abs=1e-15)
        assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-15)


def test_project_examples():
    assert np.allclose(project(KET_G), np.diag([0.0, 1.0]))
    plus = normalize(KET_E + KET_G)
    assert np.allclose(project(plus), np.full((2, 2), 0.5))
    circ = normalize(KET_E + 1j * KET_G)
    expected = np.array([[0.5, -0.5j], [0.5j, 0.5]])
    assert np.allclose(project(circ), expected)


def test_project_eigenvalues():
    rng = np.random.default_rng(3)
    for _ in range(30):
        evals = np.sort(np.linalg.eigvalsh(project(random_state(rng))))
        assert np.allclose(evals, [0.0, 1.0], atol=1e-12)


def test_bloch_examples():
    assert np.allclose(bloch_of(project(KET_E)), [0, 0, 1])
    assert np.allclose(bloch_of(0.5 * np.eye(2)), [0, 0, 0])


def test_bloch_of_steady_state():
    # steady state at gamma = omega = 1: rho_eg = -i/3, populations (1/3, 2/3)
    p = SystemParams(1.0, 1.0)
    b = bloch_of(steady_state(p))
    assert np.allclose(b, [0.0, 2.0 / 3.0, -1.0 / 3.0], atol=1e-12)
    # cross-check against long-time integration of the master equation
    rho_t = integrate_master(project(KET_E), p, 60.0, 0.01)
    assert np.allclose(bloch_of(rho_t), b, atol=1e-6)


def test_bloch_of_pure_state_is_unit():
    rng = np.random.default_rng(4)
    for _ in range(50):
        b = bloch_of(project(random_state(rng)))
        assert abs(np.linalg.norm(b) - 1.0) < 1e-10


def test_density_matrix_check():
    assert is_density_matrix(0.5 * np.eye(2))
    assert not is_density_matrix(np.diag([1.2, -0.2]))
    assert not is_density_matrix(np.array([[0.5, 0.1], [0.3, 0.5]]))


def test_expm2_against_series():
    rng = np.random.default_rng(5)
    for _ in range(40):
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        # scaled Taylor series reference
        ref = np.eye(2, dtype=complex)
        term = np.eye(2, dtype=complex)
        for k in range(1, 40):
            term = term @ (m / 8.0) / k
            ref = ref + term
        for _ in range(3):
            ref = ref @ ref
        assert np.max(np.abs(expm2(m) - ref)) < 1e-10


def test_expm2_degenerate_spectrum():
    # nilpotent and proportional-to-identity cases exercise the series branch
    n = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    assert np.allclose(expm2(n), np.eye(2) + n, atol=1e-14)
    m = 0.3j * np.eye(2)
    assert np.allclose(expm2(m), np.exp(0.3j) * np.eye(2), atol=1e-14)
