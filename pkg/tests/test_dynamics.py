import numpy as np
import pytest

from jumptrack.algebra import KET_E, KET_G, expm2, fidelity, normalize, project, trace_distance
from jumptrack.dynamics import (
    SystemParams,
    apply_jump,
    evolve_nojump,
    integrate_master,
    jump_rate,
    lindblad_rhs,
    measurement_ops,
    steady_state,
)
from jumptrack.errors import StepTooLargeError, ZeroVectorError
from oracles import euler_nojump, steady_state_numeric


def test_params_validation():
    with pytest.raises(ValueError):
        SystemParams(gamma=0.0, omega=1.0)
    with pytest.raises(ValueError):
        SystemParams(gamma=-1.0, omega=1.0)
    SystemParams(gamma=1.0, omega=-0.3)  # negative drive is fine


def test_lindblad_rhs_examples():
    p = SystemParams(1.0, 1.0)
    # stationary at the steady state
    assert np.max(np.abs(lindblad_rhs(steady_state(p), p))) < 1e-12
    # ground state dark without drive
    p0 = SystemParams(1.0, 0.0)
    assert np.max(np.abs(lindblad_rhs(project(KET_G), p0))) < 1e-15
    # excited state: populations decay at gamma, coherence driven at i/2
    rhs = lindblad_rhs(project(KET_E), p)
    assert rhs[0, 0] == pytest.approx(-1.0)
    assert rhs[1, 1] == pytest.approx(1.0)
    assert rhs[0, 1] == pytest.approx(0.5j)


def test_lindblad_rhs_traceless_hermitian():
    rng = np.random.default_rng(0)
    p = SystemParams(1.3, -0.7)
    for _ in range(20):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        rho = project(normalize(v))
        rhs = lindblad_rhs(rho, p)
        assert abs(np.trace(rhs)) < 1e-14
        assert np.max(np.abs(rhs - rhs.conj().T)) < 1e-14


@pytest.mark.parametrize(
    "gamma,omega,expected",
    [
        (1.0, 0.0, np.diag([0.0, 1.0]).astype(complex)),
        (1.0, 1.0, np.array([[1 / 3, -1j / 3], [1j / 3, 2 / 3]])),
        (2.0, 1.0, np.array([[1 / 6, -1j / 3], [1j / 3, 5 / 6]])),
    ],
)
def test_steady_state_examples(gamma, omega, expected):
    assert np.max(np.abs(steady_state(SystemParams(gamma, omega)) - expected)) < 1e-14


def test_steady_state_against_nullspace_oracle():
    for gamma, omega in [(1.0, 1.0), (2.0, 1.0), (1.0, 0.2), (0.5, -0.3)]:
        p = SystemParams(gamma, omega)
        assert np.max(np.abs(steady_state(p) - steady_state_numeric(p))) < 1e-12
        assert np.max(np.abs(lindblad_rhs(steady_state(p), p))) < 1e-12


def test_steady_state_scaling_covariance():
    for c in (0.5, 2.0, 10.0):
        a = steady_state(SystemParams(1.0, 0.7))
        b = steady_state(SystemParams(c, 0.7 * c))
        assert np.max(np.abs(a - b)) < 1e-15


def test_measurement_ops_examples():
    ops = measurement_ops(SystemParams(1.0, 0.0), 0.0)
    assert np.allclose(ops.K, np.diag([0.5, 0.0]))
    assert np.allclose(ops.J, np.array([[0, 0], [1, 0]]))

    ops = measurement_ops(SystemParams(1.0, 1.0), 0.5)
    expected_K = np.array([[5 / 8, 0.5j], [0.5j + 0.5, 1 / 8]])
    assert np.max(np.abs(ops.K - expected_K)) < 1e-15
    assert np.allclose(ops.J, np.array([[0.5, 0.0], [1.0, 0.5]]))


def test_completeness_random_draws():
    rng = np.random.default_rng(7)
    for _ in range(200):
        p = SystemParams(rng.uniform(0.1, 3.0), rng.uniform(-2.0, 2.0))
        mu = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        ops = measurement_ops(p, mu)
        dev = ops.K + ops.K.conj().T - p.gamma * ops.J.conj().T @ ops.J
        assert np.max(np.abs(dev)) < 1e-12


def test_jump_rate_examples():
    p = SystemParams(1.0, 1.0)
    assert jump_rate(KET_G, measurement_ops(p, 0.0)) == pytest.approx(0.0)
    assert jump_rate(KET_E, measurement_ops(p, 0.0)) == pytest.approx(1.0)
    assert jump_rate(KET_E, measurement_ops(p, 0.5)) == pytest.approx(1.25)


def test_evolve_nojump_eigenstate_fixed_point():
    p = SystemParams(1.0, 1.0)
    ops = measurement_ops(p, 0.5)
    evals, evecs = np.linalg.eig(ops.K)
    for k in range(2):
        s = normalize(evecs[:, k])
        for dt in (0.1, 1.0, 5.0):
            out, _ = evolve_nojump(s, ops, dt)
            assert fidelity(out, s) > 1 - 1e-10


def test_evolve_nojump_identity_limit():
    p = SystemParams(1.0, 1.0)
    ops = measurement_ops(p, 0.5)
    s = normalize(np.array([0.3 + 0.1j, 0.9]))
    out, surv = evolve_nojump(s, ops, 1e-12)
    assert fidelity(out, s) > 1 - 1e-12
    assert surv == pytest.approx(1.0, abs=1e-10)


def test_evolve_nojump_survival_first_order():
    p = SystemParams(1.0, 1.0)
    ops = measurement_ops(p, 0.5)
    dt = 0.1
    _, surv = evolve_nojump(KET_E, ops, dt)
    assert abs(surv - (1.0 - jump_rate(KET_E, ops) * dt)) < 0.01


def test_evolve_nojump_against_euler_oracle():
    p = SystemParams(1.0, 1.0)
    ops = measurement_ops(p, 0.5)
    s = normalize(np.array([0.6, 0.8j]))
    v_ref = euler_nojump(s, ops.K, 0.5, n_steps=200000)
    v = expm2(-ops.K * 0.5) @ s
    assert np.max(np.abs(v - v_ref)) < 1e-4


def test_apply_jump_examples():
    p = SystemParams(1.0, 1.0)
    assert fidelity(apply_jump(KET_E, measurement_ops(p, 0.0)), KET_G) > 1 - 1e-12
    with pytest.raises(ZeroVectorError):
        apply_jump(KET_G, measurement_ops(p, 0.0))
    out = apply_jump(KET_E, measurement_ops(p, 0.5))
    expected = normalize(np.array([0.5, 1.0], dtype=complex))
    assert fidelity(out, expected) > 1 - 1e-12


def test_integrate_master_stationary_and_identity():
    p = SystemParams(1.0, 1.0)
    rho_s = steady_state(p)
    assert trace_distance(integrate_master(rho_s, p, 5.0, 0.01), rho_s) < 1e-9
    rho0 = project(KET_E)
    assert np.array_equal(integrate_master(rho0, p, 0.0, 0.01), rho0)


def test_integrate_master_convergence():
    p = SystemParams(1.0, 1.0)
    rho = integrate_master(project(KET_E), p, 50.0, 0.01)
    assert trace_distance(rho, steady_state(p)) < 1e-6
    assert abs(np.trace(rho).real - 1.0) < 1e-9


def test_integrate_master_step_guard():
    p = SystemParams(1.0, 5.0)
    with pytest.raises(StepTooLargeError):
        integrate_master(project(KET_E), p, 1.0, 0.01)
