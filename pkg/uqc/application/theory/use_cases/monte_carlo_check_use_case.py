import logging
from dataclasses import dataclass
from typing import List

from ....domain.shared.random import Stream, spawn_rng
from ....domain.theory.services import closed_forms
from ....domain.theory.services.oracles import (
    average_case_oracle,
    first_qubit_biased_state,
    first_qubit_oracle,
    lifted_oracle,
    mc_majority_vote,
    mc_unambiguous,
    noise_slope,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    """One comparison of a closed form against a simulator oracle."""
    name: str
    expected: float
    observed: float
    stderr: float
    tolerance: float
    passed: bool


def _check(name: str, expected: float, observed: float, stderr: float, tolerance: float) -> CheckResult:
    return CheckResult(name, expected, observed, stderr, tolerance, abs(observed - expected) <= tolerance)


class MonteCarloCheckUseCase:
    """
    Use case for cross-checking the closed forms against the simulator.

    Statistical checks pass within 3 standard errors; at eps > 0 the
    band widens to max(3 sigma, 10 eps^2).
    """

    def execute(self, trials: int, seed: int, n_qubits: int = 5, delta: float = 0.5, l: int = 4) -> List[CheckResult]:
        results: List[CheckResult] = []

        # density-matrix checks are exact up to floating point
        rng = spawn_rng(seed, Stream.MONTE_CARLO, 0)
        for d in (0.0, 0.3, 0.7, 1.0):
            sigma = first_qubit_biased_state(d, 3, rng)
            for eps in (0.0, 0.05, 0.2):
                results.append(_check(
                    f"first_qubit delta={d} eps={eps}",
                    closed_forms.p_succ_noisy_first_qubit(d, eps),
                    first_qubit_oracle(sigma, eps),
                    0.0,
                    1e-10,
                ))

        coefficient = closed_forms.exact_noise_coefficient(n_qubits)
        slope = noise_slope(n_qubits, delta)
        results.append(_check(
            f"average_case_slope N={n_qubits} delta={delta}",
            -coefficient * delta,
            slope,
            0.0,
            0.05 * coefficient * delta,
        ))
        for eps in (0.0, 0.01):
            results.append(_check(
                f"average_case N={n_qubits} delta={delta} eps={eps}",
                closed_forms.p_succ_avg_noisy(n_qubits, delta, eps),
                average_case_oracle(n_qubits, delta, eps),
                0.0,
                max(10 * eps ** 2, 1e-12),
            ))
            results.append(_check(
                f"lifted N=3 delta={delta} eps={eps}",
                closed_forms.p_lifted(delta, eps),
                lifted_oracle(3, delta, eps),
                0.0,
                max(1.5 * eps ** 2, 1e-12),
            ))

        for eps in (0.0, 0.01):
            estimate = mc_unambiguous(
                n_qubits, delta, l, eps, trials, spawn_rng(seed, Stream.MONTE_CARLO, 1, int(eps * 1000))
            )
            p0, p1 = closed_forms.unambiguous_probs(n_qubits, delta, l)
            band = 10 * eps ** 2
            results.append(_check(
                f"p_unambiguous N={n_qubits} l={l} eps={eps}",
                closed_forms.p_unambiguous(p0, p1),
                estimate.p_unambiguous,
                estimate.p_unambiguous_se,
                max(3 * estimate.p_unambiguous_se, band),
            ))
            results.append(_check(
                f"expected_shots N={n_qubits} l={l} eps={eps}",
                closed_forms.expected_shots(n_qubits, l),
                estimate.mean_shots,
                estimate.mean_shots_se,
                max(3 * estimate.mean_shots_se, band),
            ))

        majority, majority_se = mc_majority_vote(0.6, 25, trials, spawn_rng(seed, Stream.MONTE_CARLO, 2))
        results.append(_check(
            "p_multishot p=0.6 T=25",
            closed_forms.p_multishot(0.6, 25),
            majority,
            majority_se,
            3 * majority_se,
        ))

        failed = [r.name for r in results if not r.passed]
        if failed:
            logger.warning(f"{len(failed)} of {len(results)} checks outside tolerance: {', '.join(failed)}")
        else:
            logger.info(f"All {len(results)} closed-form checks passed")
        return results
