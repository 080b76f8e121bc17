"""Classical simulation of the quantum sublinear solver

This package models ℓq state preparation at amplitude level, the noisy
norm estimates, and the full quantum loop together with an oracle-call
ledger.
"""

from lqgame.quantum.amplitude import (
    AmplitudeState,
    PreparationPlan,
    amplification_rounds,
    lq_state_amplitudes,
)
from lqgame.quantum.ledger import NoisyEstimate, QueryLedger, simulate_norm_estimate
from lqgame.quantum.solver import SuccinctSolution, quantum_solver_sim

__all__ = [
    "AmplitudeState",
    "PreparationPlan",
    "lq_state_amplitudes",
    "amplification_rounds",
    "NoisyEstimate",
    "QueryLedger",
    "simulate_norm_estimate",
    "SuccinctSolution",
    "quantum_solver_sim",
]
