import logging
from typing import Any, Dict, List

from ....domain.pipeline.entities.experiment import TheorySweep
from ....domain.shared.random import Stream, spawn_rng
from ....domain.theory.entities.theory_point import TheoryPoint
from ....domain.theory.services import closed_forms
from ....domain.theory.services.oracles import mc_majority_vote, mc_unambiguous

logger = logging.getLogger(__name__)

THEORY_COLUMNS = (
    "N", "k", "l", "delta", "eps", "T",
    "p_succ", "p_noisy_first_qubit", "p_avg_noisy", "p_lifted", "p_multishot",
    "p0", "p1", "p_u", "E_T",
    "noise_coeff", "stirling_coeff", "stirling_rel_error",
)
MC_COLUMNS = (
    "mc_trials", "mc_p_u", "mc_p_u_se", "mc_E_T", "mc_E_T_se", "mc_multishot", "mc_multishot_se",
)


class TheorySweepUseCase:
    """Use case for tabulating the closed forms over a parameter grid, optionally with Monte Carlo columns"""

    def points(self, sweep: TheorySweep) -> List[TheoryPoint]:
        points = []
        for n in sweep.n_qubits:
            thresholds = [l for l in sweep.thresholds if (n - 1) // 2 + 1 <= l <= n] or [n]
            for l in thresholds:
                for delta in sweep.deltas:
                    for eps in sweep.eps:
                        for shots in sweep.shots:
                            points.append(TheoryPoint(n, delta, eps, l, shots))
        return points

    def columns(self, sweep: TheorySweep) -> tuple:
        return THEORY_COLUMNS + (MC_COLUMNS if sweep.mc_trials else ())

    def execute(self, sweep: TheorySweep, seed: int) -> List[Dict[str, Any]]:
        rows = []
        points = self.points(sweep)
        logger.info(f"Evaluating {len(points)} theory points (Monte Carlo trials: {sweep.mc_trials})")
        for index, point in enumerate(points):
            row = self.evaluate(point)
            if sweep.mc_trials:
                row.update(self.monte_carlo(point, sweep.mc_trials, seed, index))
            rows.append(row)
        return rows

    def evaluate(self, point: TheoryPoint) -> Dict[str, Any]:
        n, l, delta, eps, shots = point.n_qubits, point.threshold, point.delta, point.eps, point.shots
        p_avg = min(max(closed_forms.p_succ_avg_noisy(n, delta, eps), 0.0), 1.0)
        p0, p1 = closed_forms.unambiguous_probs(n, delta, l)
        return {
            "N": n,
            "k": point.k,
            "l": l,
            "delta": delta,
            "eps": eps,
            "T": shots,
            "p_succ": closed_forms.p_succ_oneshot(delta),
            "p_noisy_first_qubit": closed_forms.p_succ_noisy_first_qubit(delta, eps),
            "p_avg_noisy": p_avg,
            "p_lifted": closed_forms.p_lifted(delta, eps),
            "p_multishot": closed_forms.p_multishot(p_avg, shots),
            "p0": p0,
            "p1": p1,
            "p_u": closed_forms.p_unambiguous(p0, p1),
            "E_T": closed_forms.expected_shots(n, l),
            "noise_coeff": closed_forms.exact_noise_coefficient(n),
            "stirling_coeff": closed_forms.stirling_coefficient(point.k),
            "stirling_rel_error": closed_forms.stirling_relative_error(point.k),
        }

    def monte_carlo(self, point: TheoryPoint, trials: int, seed: int, index: int) -> Dict[str, Any]:
        rng = spawn_rng(seed, Stream.THEORY, index)
        estimate = mc_unambiguous(point.n_qubits, point.delta, point.threshold, point.eps, trials, rng)
        p_avg = min(max(closed_forms.p_succ_avg_noisy(point.n_qubits, point.delta, point.eps), 0.0), 1.0)
        majority, majority_se = mc_majority_vote(p_avg, point.shots, trials, rng)
        return {
            "mc_trials": trials,
            "mc_p_u": estimate.p_unambiguous,
            "mc_p_u_se": estimate.p_unambiguous_se,
            "mc_E_T": estimate.mean_shots,
            "mc_E_T_se": estimate.mean_shots_se,
            "mc_multishot": majority,
            "mc_multishot_se": majority_se,
        }
