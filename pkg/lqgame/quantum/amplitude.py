"""ℓq state preparation at amplitude level

    The state Σ_i sgn(a_i)|a_i|^(q/2) / ‖a‖_q^(q/2) |i> is prepared by
    rotating a uniform superposition with a flag amplitude
    |a_i|^(q/2) / a_max, where a_max = max_i |a_i|^(q/2), and amplifying
    the flagged branch. The flagged branch starts with amplitude
    sin θ = ‖a‖_q^(q/2) / (sqrt(n)·a_max). After r Grover iterates the
    success probability is sin²((2r+1)θ).

    Finding a_max is modelled as an exact maximum charged
    ceil(C_MIN·sqrt(n)) oracle calls; every Grover iterate (and the initial
    preparation) costs GROVER_CALLS_PER_ITERATE calls.
"""

import math

import numpy as np

from lqgame.constants import AMPLIFICATION_TARGET, C_MIN, GROVER_CALLS_PER_ITERATE
from lqgame.estimator import RngStream
from lqgame.exceptions import LqGameUsageError
from lqgame.norms import as_vector

AMPLITUDE_NORM_TOL = 1e-10


def _check_exponent(q: float) -> None:
    if not 1.0 < q <= 2.0:
        raise LqGameUsageError(f"q must be in (1, 2], got {q}")


def _magnitudes(a: np.ndarray) -> tuple:
    magnitudes = np.abs(a)
    largest = float(magnitudes.max())
    if largest == 0.0:
        raise LqGameUsageError("Cannot prepare a state from the zero vector")
    return magnitudes / largest, largest


class AmplitudeState:
    """Real amplitudes of a normalised state.

        :param amplitudes: Signed amplitudes with Σ amplitude² = 1

        :raises LqGameUsageError: If the squared amplitudes do not sum to 1
    """

    def __init__(self, amplitudes) -> None:
        amplitudes = as_vector(amplitudes, "amplitudes")
        total = float(np.sum(amplitudes ** 2))
        if abs(total - 1.0) > AMPLITUDE_NORM_TOL:
            raise LqGameUsageError(f"Squared amplitudes sum to {total!r}, not 1")
        self.amplitudes = amplitudes

    @property
    def dimension(self) -> int:
        return int(self.amplitudes.size)

    def probabilities(self) -> np.ndarray:
        """Measurement law amplitude_i²."""
        return self.amplitudes ** 2

    def measure(self, rng: RngStream, shots: int = 1) -> np.ndarray:
        """Computational-basis measurement outcomes."""
        probabilities = self.probabilities()
        return rng.generator.choice(self.dimension, size=shots, p=probabilities / probabilities.sum())

    def __repr__(self) -> str:
        return "AmplitudeState(dimension={})".format(self.dimension)


def lq_state_amplitudes(a, q: float) -> AmplitudeState:
    """State with amplitudes sgn(a_i)|a_i|^(q/2) / ‖a‖_q^(q/2).

        Measuring it draws i with probability |a_i|^q / ‖a‖_q^q.

        :raises LqGameUsageError: If a = 0 or q is outside (1, 2]
    """
    _check_exponent(q)
    a = as_vector(a, "a")
    scaled, _ = _magnitudes(a)
    powered = scaled ** (q / 2.0)
    return AmplitudeState(np.sign(a) * powered / math.sqrt(float(np.sum(powered ** 2))))


def initial_success_amplitude(a, q: float) -> float:
    """sin θ = ‖a‖_q^(q/2) / (sqrt(n)·max_i |a_i|^(q/2))."""
    _check_exponent(q)
    a = as_vector(a, "a")
    scaled, _ = _magnitudes(a)
    return min(1.0, math.sqrt(float(np.mean(scaled ** q))))


def success_probability(theta: float, rounds: int) -> float:
    """sin²((2r+1)θ)."""
    return math.sin((2 * rounds + 1) * theta) ** 2


def success_probability_by_reflections(theta: float, rounds: int) -> float:
    """Same quantity by iterating the two reflections on the (bad, good) plane."""
    start = np.array([math.cos(theta), math.sin(theta)])
    oracle = np.diag([1.0, -1.0])
    diffusion = 2.0 * np.outer(start, start) - np.eye(2)
    iterate = diffusion @ oracle
    state = start
    for _ in range(rounds):
        state = iterate @ state
    return float(state[1] ** 2)


def grover_rounds(theta: float, target: float = AMPLIFICATION_TARGET) -> int:
    """Smallest r with sin²((2r+1)θ) >= target, else the r putting (2r+1)θ nearest π/2."""
    if theta >= math.pi / 2.0:
        return 0
    limit = int(math.ceil(math.pi / (4.0 * theta)))
    for rounds in range(limit + 1):
        if success_probability(theta, rounds) >= target:
            return rounds
    return max(0, int(round(math.pi / (4.0 * theta) - 0.5)))


def max_finding_charge(n: int) -> int:
    return int(math.ceil(C_MIN * math.sqrt(n)))


def amplification_rounds(a, q: float) -> tuple:
    """Grover rounds and oracle charge to prepare the ℓq state of a.

        :param a: Non-zero coefficient vector
        :param q: Exponent in (1, 2]

        :returns: (rounds, charged_queries) with
            charged_queries = 2(2r+1) + ceil(C_MIN·sqrt(n))
        :rtype: tuple
    """
    a = as_vector(a, "a")
    theta = math.asin(initial_success_amplitude(a, q))
    rounds = grover_rounds(theta)
    charged = GROVER_CALLS_PER_ITERATE * (2 * rounds + 1) + max_finding_charge(a.size)
    return rounds, charged


class PreparationPlan:
    """Rounds, angle and success probability of one state preparation."""

    def __init__(self, a, q: float) -> None:
        a = as_vector(a, "a")
        self.dimension = int(a.size)
        self.theta = math.asin(initial_success_amplitude(a, q))
        self.rounds = grover_rounds(self.theta)
        self.success_probability = success_probability(self.theta, self.rounds)

    @property
    def attempt_charge(self) -> int:
        """Oracle calls of one amplified attempt."""
        return GROVER_CALLS_PER_ITERATE * (2 * self.rounds + 1)

    def run(self, rng: RngStream) -> int:
        """Repeat attempts until one succeeds; return the total charge including max-finding."""
        charged = max_finding_charge(self.dimension) + self.attempt_charge
        while rng.random() >= self.success_probability:
            charged += self.attempt_charge
        return charged

    def __repr__(self) -> str:
        return "PreparationPlan(dimension={}, rounds={}, success_probability={:.6f})".format(
            self.dimension, self.rounds, self.success_probability)
