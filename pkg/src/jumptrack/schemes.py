"""Closed-form adaptive two-state monitoring schemes.

A monitoring scheme that keeps the atom jumping between exactly two pure
states must alternate the local-oscillator amplitude between +mu and -mu
after each detection.  Admissible mu solve the radical-free condition

    4 gamma^2 |mu|^4 mu^2 + (Omega^2 - gamma^2/4) mu^2 = Omega^2 / 4,

whose complete root set is mu = +-1/2 (always, for Omega != 0) plus the
four purely imaginary values

    mu = +- i sqrt((1 +- sqrt(1 - 16 Omega^2/gamma^2)) / 8),

which exist only for |Omega| <= gamma/4.  The two rest states are
eigenstates of the no-jump generators K(+mu) and K(-mu):

    |psi_+-> ∝ Omega |e> + (i gamma/2 +- f(mu)) |g>,
    f(mu) = sqrt(Omega^2 - 2i Omega gamma mu* - gamma^2/4).

A candidate pair is accepted when the jump operator maps each rest state
onto the other (closed two-jump cycle) and a convex mixture of the two
projectors reconstructs the master-equation steady state (physical
realizability).  The mixing weights give the tracking cost in bits via the
Shannon entropy.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import dynamics
from .algebra import KET_E, KET_G, fidelity, normalize, project
from .dynamics import SystemParams, measurement_ops
from .errors import DegenerateEigenstatesError, OmegaZeroError, ZeroRateError

FAMILY_REAL = "real"
FAMILY_IMAG_LARGE = "imag-large"
FAMILY_IMAG_SMALL = "imag-small"
FAMILIES = (FAMILY_REAL, FAMILY_IMAG_LARGE, FAMILY_IMAG_SMALL)

# mu values closer than this are treated as a single (boundary) root
_MERGE_TOL = 1e-10

PR_RESIDUAL_TOL = 1e-8
CYCLE_FIDELITY_TOL = 1e-9


@dataclass(frozen=True)
class MuCandidate:
    """One root of the radical-free condition, tagged by family and sign."""

    mu: complex
    family: str
    sign: int  # +1 or -1: which member of the +-mu pair

    @property
    def branch(self) -> str:
        return f"{self.family}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class FixedStatePair:
    """Ordered rest-state pair: psi1 for setting +mu, psi2 for -mu.

    s1, s2 in {'+', '-'} record which eigenstate branch each state is.
    cycle_ok marks whether J(+mu) psi1 ∝ psi2 and J(-mu) psi2 ∝ psi1.
    """

    psi1: np.ndarray
    psi2: np.ndarray
    s1: str
    s2: str
    cycle_ok: bool


@dataclass(frozen=True)
class JumpingScheme:
    """A complete two-state jumping solution for one mu family."""

    family: str
    mu: complex
    pair: FixedStatePair
    p1: float
    p2: float
    entropy_bits: float
    pr_residual: float


def f_of_mu(p: SystemParams, mu: complex) -> complex:
    """Principal branch of sqrt(Omega^2 - 2i Omega gamma mu* - gamma^2/4)."""
    radicand = p.omega**2 - 2j * p.omega * p.gamma * np.conj(complex(mu)) - 0.25 * p.gamma**2
    return cmath.sqrt(radicand)


def radical_residual(p: SystemParams, mu: complex) -> float:
    """|4 g^2 |mu|^4 mu^2 + (W^2 - g^2/4) mu^2 - W^2/4| for mu a claimed root."""
    mu = complex(mu)
    lhs = 4.0 * p.gamma**2 * abs(mu) ** 4 * mu**2 + (p.omega**2 - 0.25 * p.gamma**2) * mu**2
    return abs(lhs - 0.25 * p.omega**2)


def verify_mu(p: SystemParams, mu: complex) -> float:
    """Residual of the adaptive consistency condition f(-mu) = f(mu) - Omega/mu.

    Minimized over the sign freedom of both square-root branches, so the
    principal-branch choice cannot produce a false negative.
    """
    mu = complex(mu)
    if mu == 0:
        raise ValueError("mu must be nonzero")
    fp = f_of_mu(p, mu)
    fm = f_of_mu(p, -mu)
    target = p.omega / mu
    return min(
        abs(s1 * fm - (s2 * fp - target)) for s1 in (1, -1) for s2 in (1, -1)
    )


def mu_candidates(p: SystemParams) -> list[MuCandidate]:
    """All local-oscillator amplitudes admitting two-state jumping.

    Always returns +-1/2.  For |Omega| <= gamma/4 also returns the purely
    imaginary roots; exactly at the existence boundary the large and small
    imaginary branches coincide and are merged (reported once, as the large
    family).
    """
    if p.omega == 0:
        raise OmegaZeroError("undriven atom: tracking trivial")
    out = [
        MuCandidate(0.5 + 0j, FAMILY_REAL, +1),
        MuCandidate(-0.5 + 0j, FAMILY_REAL, -1),
    ]
    disc = 1.0 - 16.0 * p.omega**2 / p.gamma**2
    if disc < -1e-12:
        return out
    root = math.sqrt(max(disc, 0.0))
    nu_large = math.sqrt((1.0 + root) / 8.0)
    nu_small = math.sqrt((1.0 - root) / 8.0)
    out.append(MuCandidate(1j * nu_large, FAMILY_IMAG_LARGE, +1))
    out.append(MuCandidate(-1j * nu_large, FAMILY_IMAG_LARGE, -1))
    if nu_large - nu_small >= _MERGE_TOL:
        out.append(MuCandidate(1j * nu_small, FAMILY_IMAG_SMALL, +1))
        out.append(MuCandidate(-1j * nu_small, FAMILY_IMAG_SMALL, -1))
    return out


def fixed_states(p: SystemParams, mu: complex) -> tuple[np.ndarray, np.ndarray]:
    """Normalized eigenstates (psi_plus, psi_minus) of the no-jump generator K(mu)."""
    f = f_of_mu(p, mu)
    if abs(f) < 1e-12:
        raise DegenerateEigenstatesError("f(mu) = 0: the two fixed states coincide")
    psi_plus = normalize(p.omega * KET_E + (0.5j * p.gamma + f) * KET_G)
    psi_minus = normalize(p.omega * KET_E + (0.5j * p.gamma - f) * KET_G)
    return psi_plus, psi_minus


def enumerate_pairs(p: SystemParams, mu: complex) -> list[FixedStatePair]:
    """All four sign combinations of rest states for +mu and -mu.

    Each pair is annotated with whether the two-jump cycle closes:
    J(+mu) maps psi1 onto psi2 and J(-mu) maps psi2 back onto psi1.
    """
    plus_states = dict(zip("+-", fixed_states(p, mu)))
    minus_states = dict(zip("+-", fixed_states(p, -mu)))
    j_pos = measurement_ops(p, mu).J
    j_neg = measurement_ops(p, -mu).J
    pairs = []
    for s1 in "+-":
        for s2 in "+-":
            psi1, psi2 = plus_states[s1], minus_states[s2]
            fwd = fidelity(normalize(j_pos @ psi1), psi2)
            back = fidelity(normalize(j_neg @ psi2), psi1)
            ok = fwd >= 1.0 - CYCLE_FIDELITY_TOL and back >= 1.0 - CYCLE_FIDELITY_TOL
            pairs.append(FixedStatePair(psi1, psi2, s1, s2, ok))
    return pairs


def solve_occupation(pair: FixedStatePair, p: SystemParams) -> tuple[float, float, float]:
    """Best convex weights reconstructing the steady state from the pair.

    Minimizes ||p1 P1 + (1-p1) P2 - rho_s||_F over p1 in [0, 1]; the
    1-D least-squares problem has a closed form, clamped to the interval.
    A large residual signals that the pair is not physically realizable.
    """
    P1, P2 = project(pair.psi1), project(pair.psi2)
    rho_s = dynamics.steady_state(p)
    delta = P1 - P2
    denom = float(np.real(np.vdot(delta, delta)))
    if denom < 1e-30:
        p1 = 0.5
    else:
        p1 = float(np.real(np.vdot(delta, rho_s - P2))) / denom
        p1 = min(max(p1, 0.0), 1.0)
    residual = float(np.linalg.norm(p1 * P1 + (1.0 - p1) * P2 - rho_s))
    return p1, 1.0 - p1, residual


def rate_based_occupation(
    pair: FixedStatePair, p: SystemParams, mu: complex
) -> tuple[float, float]:
    """Stationary occupancies from the jump rates: p_i ∝ 1 / r_i.

    r1 is the detection rate out of psi1 under setting +mu, r2 out of psi2
    under -mu.
    """
    r1 = dynamics.jump_rate(pair.psi1, measurement_ops(p, mu))
    r2 = dynamics.jump_rate(pair.psi2, measurement_ops(p, -mu))
    if r1 < 1e-300 or r2 < 1e-300:
        raise ZeroRateError("jump rate underflowed")
    return r2 / (r1 + r2), r1 / (r1 + r2)


def shannon_entropy(p1: float) -> float:
    """Binary Shannon entropy in bits, with 0 log 0 = 0."""
    if not 0.0 <= p1 <= 1.0:
        raise ValueError("p1 must be a probability")
    h = 0.0
    for q in (p1, 1.0 - p1):
        if q > 0.0:
            h -= q * math.log2(q)
    return h


def find_schemes(p: SystemParams) -> list[JumpingScheme]:
    """All two-state jumping schemes, one representative per mu family.

    mu and -mu generate the same scheme with the roles of the two states
    exchanged, so only the mu_r = +1/2 and mu_i > 0 representatives are
    examined.  For each, the pair that closes the jump cycle and
    reconstructs the steady state (Frobenius residual < 1e-8) is kept.
    """
    schemes = []
    for cand in mu_candidates(p):
        if cand.sign < 0:
            continue
        best = None
        for pair in enumerate_pairs(p, cand.mu):
            if not pair.cycle_ok:
                continue
            p1, p2, residual = solve_occupation(pair, p)
            if residual >= PR_RESIDUAL_TOL:
                continue
            if best is None or residual < best.pr_residual:
                best = JumpingScheme(
                    family=cand.family,
                    mu=cand.mu,
                    pair=pair,
                    p1=p1,
                    p2=p2,
                    entropy_bits=shannon_entropy(p1),
                    pr_residual=residual,
                )
        if best is not None:
            schemes.append(best)
    return schemes


def entropy_curve(gamma: float, omega_grid, families=None) -> list[dict]:
    """Scheme table over a grid of Rabi frequencies (Fig.-2 style data).

    One row per (omega, existing family), ordered by grid index then family.
    """
    rows = []
    for omega in omega_grid:
        p = SystemParams(gamma=gamma, omega=float(omega))
        for scheme in find_schemes(p):
            if families is not None and scheme.family not in families:
                continue
            rows.append(
                {
                    "omega_over_gamma": omega / gamma,
                    "family": scheme.family,
                    "mu_re": scheme.mu.real,
                    "mu_im": scheme.mu.imag,
                    "p1": scheme.p1,
                    "p2": scheme.p2,
                    "entropy_bits": scheme.entropy_bits,
                    "pr_residual": scheme.pr_residual,
                }
            )
    return rows
