"""Quantum-jump trajectories and adaptive two-state tracking for a driven, damped qubit."""

__version__ = "0.1.0"

from .dynamics import SystemParams, measurement_ops, steady_state
from .schemes import JumpingScheme, find_schemes, mu_candidates, shannon_entropy
from .trajectory import (
    AdaptivePolicy,
    FixedPolicy,
    SimConfig,
    simulate_ensemble,
    simulate_one,
)

__all__ = [
    "SystemParams",
    "measurement_ops",
    "steady_state",
    "JumpingScheme",
    "find_schemes",
    "mu_candidates",
    "shannon_entropy",
    "AdaptivePolicy",
    "FixedPolicy",
    "SimConfig",
    "simulate_ensemble",
    "simulate_one",
    "__version__",
]
