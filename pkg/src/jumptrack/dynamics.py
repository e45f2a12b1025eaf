"""Master equation, steady state, and mu-parameterized measurement operators.

The atom decays at rate gamma and is driven at Rabi frequency Omega:

    rho_dot = -i (Omega/2) [sigma_x, rho]
              + (gamma/2) ([sigma rho, sigma^dag] + [sigma, rho sigma^dag]).

Interfering the emitted field with a weak local oscillator of complex
amplitude mu before photodetection decomposes each infinitesimal step into
a no-jump part 1 - K dt and a jump part sqrt(gamma dt) J, with

    K = i (Omega/2) sigma_x + (gamma/2) sigma^dag sigma
        + mu* gamma sigma + (gamma |mu|^2 / 2) I,
    J = sigma + mu I,

satisfying the completeness relation K + K^dag = gamma J^dag J.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import I2, SIGMA, SIGMA_DAG_SIGMA, SIGMA_X, expm2, normalize, norm2
from .errors import StepTooLargeError, ZeroVectorError


@dataclass(frozen=True)
class SystemParams:
    """Decay rate gamma > 0 and Rabi frequency omega (any sign), units 1/time."""

    gamma: float
    omega: float

    def __post_init__(self):
        if not (np.isfinite(self.gamma) and np.isfinite(self.omega)):
            raise ValueError("gamma and omega must be finite")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")


@dataclass(frozen=True)
class MeasurementOps:
    """Immutable bundle of the no-jump generator K and jump operator J."""

    K: np.ndarray
    J: np.ndarray
    gamma: float
    mu: complex


def lindblad_rhs(rho: np.ndarray, p: SystemParams) -> np.ndarray:
    """Right-hand side of the master equation; traceless and Hermitian."""
    sig_dag = SIGMA.conj().T
    drive = -0.5j * p.omega * (SIGMA_X @ rho - rho @ SIGMA_X)
    damp = 0.5 * p.gamma * (
        SIGMA @ rho @ sig_dag - sig_dag @ SIGMA @ rho
        + SIGMA @ rho @ sig_dag - rho @ sig_dag @ SIGMA
    )
    return drive + damp


def steady_state(p: SystemParams) -> np.ndarray:
    """Analytic stationary state of the resonance-fluorescence master equation."""
    g, w = p.gamma, p.omega
    denom = g * g + 2.0 * w * w
    return np.array(
        [[w * w, -1j * g * w], [1j * g * w, g * g + w * w]], dtype=complex
    ) / denom


def measurement_ops(p: SystemParams, mu: complex) -> MeasurementOps:
    """Build (K, J) for local-oscillator amplitude mu."""
    mu = complex(mu)
    K = (
        0.5j * p.omega * SIGMA_X
        + 0.5 * p.gamma * SIGMA_DAG_SIGMA
        + np.conj(mu) * p.gamma * SIGMA
        + 0.5 * p.gamma * abs(mu) ** 2 * I2
    )
    J = SIGMA + mu * I2
    return MeasurementOps(K=K, J=J, gamma=p.gamma, mu=mu)


def jump_rate(s: np.ndarray, ops: MeasurementOps) -> float:
    """Detection rate gamma <s| J^dag J |s> for a normalized state."""
    v = ops.J @ s
    return ops.gamma * norm2(v)


def evolve_nojump(s: np.ndarray, ops: MeasurementOps, dt: float) -> tuple[np.ndarray, float]:
    """Propagate under exp(-K dt); return (normalized state, survival factor).

    The survival factor is the squared norm before renormalization, i.e. the
    probability that no photon was detected during dt given the state s.
    """
    v = expm2(-ops.K * dt) @ s
    surv = norm2(v)
    if surv < 1e-300:
        raise ZeroVectorError("no-jump survival underflowed")
    return v / np.sqrt(surv), surv


def apply_jump(s: np.ndarray, ops: MeasurementOps) -> np.ndarray:
    """State after a detection event: normalize(J s)."""
    v = ops.J @ s
    if norm2(v) < 1e-300:
        raise ZeroVectorError("jump from the kernel of J")
    return normalize(v)


def integrate_master(rho0: np.ndarray, p: SystemParams, t: float, dt: float) -> np.ndarray:
    """RK4 integration of the master equation (verification oracle).

    Hermiticity is enforced by symmetrization after each step.  Requires
    dt <= 0.01 / max(gamma, |omega|).
    """
    dt_max = 0.01 / max(p.gamma, abs(p.omega), 1e-300)
    if dt > dt_max * (1 + 1e-12):
        raise StepTooLargeError(f"dt={dt} exceeds {dt_max}")
    rho = np.array(rho0, dtype=complex)
    n_steps = int(round(t / dt))
    remainder = t - n_steps * dt
    for step in range(n_steps + 1):
        h = dt if step < n_steps else remainder
        if h <= 0:
            continue
        k1 = lindblad_rhs(rho, p)
        k2 = lindblad_rhs(rho + 0.5 * h * k1, p)
        k3 = lindblad_rhs(rho + 0.5 * h * k2, p)
        k4 = lindblad_rhs(rho + h * k3, p)
        rho = rho + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        rho = 0.5 * (rho + rho.conj().T)
    return rho
