"""Seeded Monte Carlo quantum-jump trajectories.

Uses the waiting-time algorithm: between detections the unnormalized state
evolves under exp(-K t), whose squared norm is the no-detection survival
probability.  A uniform draw u fixes the next jump time as the instant the
survival reaches u (monotone decay, resolved by bisection), so there is no
per-step Bernoulli bias; the only discretization left is the bisection
tolerance on the jump time.

Under the adaptive two-state policy the local-oscillator sign flips after
every detection, keeping the atom jumping between the two rest states of
the scheme.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .algebra import bloch_of_state, norm2, normalize, project
from .dynamics import MeasurementOps, SystemParams, apply_jump, measurement_ops
from .errors import RecordTooShortError, ZeroVectorError
from .schemes import JumpingScheme

# bisection resolution on jump times, in units of 1/gamma
_JUMP_TIME_TOL = 1e-9


@dataclass(frozen=True)
class FixedPolicy:
    """Constant local-oscillator amplitude (generic monitoring)."""

    mu: complex


@dataclass(frozen=True)
class AdaptivePolicy:
    """Two-state scheme: negate mu after each detection."""

    scheme: JumpingScheme


@dataclass(frozen=True)
class SimConfig:
    params: SystemParams
    policy: FixedPolicy | AdaptivePolicy
    t_max: float
    dt_record: float
    seed: int
    n_trajectories: int = 1

    def __post_init__(self):
        if self.t_max <= 0 or self.dt_record <= 0:
            raise ValueError("t_max and dt_record must be positive")
        if self.n_trajectories < 1:
            raise ValueError("n_trajectories must be >= 1")


@dataclass(frozen=True)
class JumpEvent:
    t: float
    pre_state: np.ndarray
    post_state: np.ndarray


@dataclass
class TrajectoryRecord:
    """Sampled states, jump events, and active mu settings of one run."""

    times: np.ndarray            # (n_samples,)
    states: np.ndarray           # (n_samples, 2) complex
    bloch: np.ndarray            # (n_samples, 3)
    active_mu: np.ndarray        # (n_samples,) complex
    jumps_before: np.ndarray     # (n_samples,) int, detections up to each sample
    jumps: list[JumpEvent]
    params: SystemParams
    termination_reason: str = "completed"
    initial_transient: bool = False


@dataclass
class EnsembleStats:
    """Aggregates over independent trajectories at common sample times."""

    times: np.ndarray            # (n_samples,)
    mean_rho: np.ndarray         # (n_samples, 2, 2)
    occupancy: tuple[float, float] | None  # adaptive mode only
    jump_count_mean: float
    n_trajectories: int


def _expm_apply(k: np.ndarray, t: float, a: complex, b: complex):
    """exp(-k t) @ (a, b) via the 2x2 Cayley-Hamilton closed form.

    Scalar arithmetic: this sits in the hot loop of the waiting-time search.
    """
    m00 = -t * k[0, 0]
    m01 = -t * k[0, 1]
    m10 = -t * k[1, 0]
    m11 = -t * k[1, 1]
    h = 0.5 * (m00 + m11)
    d = cmath.sqrt(h * h - (m00 * m11 - m01 * m10))
    if abs(d) < 1e-8:
        d2 = d * d
        sinch = 1.0 + d2 / 6.0 + d2 * d2 / 120.0
        coshd = 1.0 + d2 / 2.0 + d2 * d2 / 24.0
    else:
        sinch = cmath.sinh(d) / d
        coshd = cmath.cosh(d)
    eh = cmath.exp(h)
    e00 = eh * (coshd + sinch * (m00 - h))
    e11 = eh * (coshd + sinch * (m11 - h))
    e01 = eh * sinch * m01
    e10 = eh * sinch * m10
    return e00 * a + e01 * b, e10 * a + e11 * b


def _survival(k: np.ndarray, t: float, a: complex, b: complex) -> float:
    va, vb = _expm_apply(k, t, a, b)
    return (va * va.conjugate() + vb * vb.conjugate()).real


def trajectory_rng(seed: int, index: int) -> np.random.Generator:
    """Decorrelated stream for trajectory `index`: pure function of (seed, index)."""
    return np.random.default_rng([seed, index])


def default_initial(cfg: SimConfig) -> np.ndarray:
    """|e> for fixed monitoring; the scheme's first rest state for adaptive."""
    if isinstance(cfg.policy, AdaptivePolicy):
        return cfg.policy.scheme.pair.psi1.copy()
    return np.array([1.0, 0.0], dtype=complex)


def simulate_one(
    cfg: SimConfig,
    initial: np.ndarray | None = None,
    rng: np.random.Generator | None = None,
    traj_index: int = 0,
) -> TrajectoryRecord:
    """One quantum-jump trajectory sampled every dt_record."""
    if initial is None:
        initial = default_initial(cfg)
    if rng is None:
        rng = trajectory_rng(cfg.seed, traj_index)

    p = cfg.params
    adaptive = isinstance(cfg.policy, AdaptivePolicy)
    if adaptive:
        scheme = cfg.policy.scheme
        ops_by_sign = {
            +1: measurement_ops(p, scheme.mu),
            -1: measurement_ops(p, -scheme.mu),
        }
    else:
        ops_by_sign = {+1: measurement_ops(p, cfg.policy.mu)}
    sign = +1
    ops = ops_by_sign[sign]

    s = normalize(np.asarray(initial, dtype=complex))
    transient = False
    if adaptive:
        from .algebra import fidelity

        transient = fidelity(s, scheme.pair.psi1) < 1.0 - 1e-9

    n_steps = int(round(cfg.t_max / cfg.dt_record))
    tol = _JUMP_TIME_TOL / p.gamma

    times = [0.0]
    states = [s.copy()]
    blochs = [bloch_of_state(s)]
    mus = [ops.mu]
    jumps_before = [0]
    jumps: list[JumpEvent] = []
    reason = "completed"

    u = 1.0 - rng.random()  # in (0, 1]
    surv = 1.0  # survival accumulated since the last detection
    t = 0.0
    a, b = complex(s[0]), complex(s[1])

    for step in range(1, n_steps + 1):
        t_next = step * cfg.dt_record
        terminated = False
        while True:
            seg = t_next - t
            va, vb = _expm_apply(ops.K, seg, a, b)
            n2 = (va * va.conjugate() + vb * vb.conjugate()).real
            if surv * n2 > u:
                surv *= n2
                inv = 1.0 / n2**0.5
                a, b = va * inv, vb * inv
                t = t_next
                break
            # detection inside this segment: bisect the jump time
            lo, hi = 0.0, seg
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if surv * _survival(ops.K, mid, a, b) > u:
                    lo = mid
                else:
                    hi = mid
            tau = 0.5 * (lo + hi)
            pa, pb = _expm_apply(ops.K, tau, a, b)
            pre = normalize(np.array([pa, pb]))
            try:
                post = apply_jump(pre, ops)
            except ZeroVectorError:
                reason = "dark-state"
                terminated = True
                break
            t += tau
            jumps.append(JumpEvent(t=t, pre_state=pre, post_state=post))
            a, b = complex(post[0]), complex(post[1])
            if adaptive:
                sign = -sign
                ops = ops_by_sign[sign]
            u = 1.0 - rng.random()
            surv = 1.0
        if terminated:
            break
        state = np.array([a, b])
        times.append(t_next)
        states.append(state)
        blochs.append(bloch_of_state(state))
        mus.append(ops.mu)
        jumps_before.append(len(jumps))

    return TrajectoryRecord(
        times=np.array(times),
        states=np.array(states),
        bloch=np.array(blochs),
        active_mu=np.array(mus, dtype=complex),
        jumps_before=np.array(jumps_before, dtype=int),
        jumps=jumps,
        params=p,
        termination_reason=reason,
        initial_transient=transient,
    )


def simulate_ensemble(cfg: SimConfig, initial: np.ndarray | None = None) -> EnsembleStats:
    """Independent trajectories on decorrelated streams, aggregated.

    Deterministic for fixed (seed, cfg): trajectory i's stream depends only
    on (seed, i) and the reduction is order-independent.
    """
    records = (
        simulate_one(cfg, initial=initial, traj_index=i)
        for i in range(cfg.n_trajectories)
    )
    return aggregate_records(cfg, records)


def aggregate_records(cfg: SimConfig, records) -> EnsembleStats:
    """Reduce an iterable of trajectory records to ensemble statistics."""
    n_steps = int(round(cfg.t_max / cfg.dt_record))
    times = np.arange(n_steps + 1) * cfg.dt_record
    rho_sum = np.zeros((n_steps + 1, 2, 2), dtype=complex)
    counts = np.zeros(n_steps + 1)
    jump_total = 0
    adaptive = isinstance(cfg.policy, AdaptivePolicy)
    occ_hits = np.zeros(2)
    occ_total = 0

    for rec in records:
        m = len(rec.times)
        for k in range(m):
            rho_sum[k] += project(rec.states[k])
        counts[:m] += 1
        jump_total += len(rec.jumps)
        if adaptive:
            psi1 = cfg.policy.scheme.pair.psi1
            psi2 = cfg.policy.scheme.pair.psi2
            ov1 = np.abs(rec.states @ psi1.conj()) ** 2
            ov2 = np.abs(rec.states @ psi2.conj()) ** 2
            occ_hits[0] += np.sum(ov1 >= 1.0 - 1e-6)
            occ_hits[1] += np.sum(ov2 >= 1.0 - 1e-6)
            occ_total += m

    counts = np.maximum(counts, 1)
    mean_rho = rho_sum / counts[:, None, None]
    occupancy = None
    if adaptive and occ_total > 0:
        occupancy = (occ_hits[0] / occ_total, occ_hits[1] / occ_total)
    return EnsembleStats(
        times=times,
        mean_rho=mean_rho,
        occupancy=occupancy,
        jump_count_mean=jump_total / cfg.n_trajectories,
        n_trajectories=cfg.n_trajectories,
    )


def time_average_rho(rec: TrajectoryRecord) -> np.ndarray:
    """Time-averaged projector over a record spanning at least 100/gamma."""
    span = rec.times[-1] - rec.times[0]
    if span < 100.0 / rec.params.gamma:
        raise RecordTooShortError(f"record spans {span}, need >= {100.0 / rec.params.gamma}")
    # uniform sampling: trapezoid weights
    w = np.full(len(rec.times), 1.0)
    w[0] = w[-1] = 0.5
    w /= w.sum()
    rho = np.zeros((2, 2), dtype=complex)
    for k in range(len(rec.times)):
        rho += w[k] * project(rec.states[k])
    return rho
