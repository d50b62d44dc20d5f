import math

import numpy as np
import pytest

from uqc.domain.decision.entities.decision import DecisionLabel, ThresholdPolicy
from uqc.domain.decision.services.classifiers import CircuitRun, classify_m3
from uqc.domain.noise.entities.channel import Channel
from uqc.domain.noise.services.kraus_channels import apply_channel, global_depolarize
from uqc.domain.qsim.entities.states import MixedState
from uqc.domain.qsim.services.simulator import partial_trace_keep, probabilities
from uqc.domain.shared.errors import ValidationError
from uqc.domain.theory.entities.theory_point import AverageCaseState, LiftedState, TheoryPoint
from uqc.domain.theory.services import closed_forms
from uqc.domain.theory.services.oracles import (
    MAX_ORACLE_QUBITS,
    average_case_oracle,
    first_qubit_biased_state,
    first_qubit_oracle,
    lifted_oracle,
    mc_majority_vote,
    mc_unambiguous,
    noise_slope,
    success_probability,
)
from tests.support import random_density_matrix

DELTAS = np.linspace(0.0, 1.0, 11)


class TestTheoryPoint:
    def test_even_qubit_count_is_rejected(self):
        with pytest.raises(ValidationError):
            TheoryPoint(4, 0.5)

    def test_threshold_range(self):
        with pytest.raises(ValidationError):
            TheoryPoint(5, 0.5, l=2)
        assert TheoryPoint(5, 0.5).threshold == 5

    def test_probabilities_are_checked(self):
        with pytest.raises(ValidationError):
            TheoryPoint(3, 1.5)
        with pytest.raises(ValidationError):
            TheoryPoint(3, 0.5, eps=-0.1)

    def test_average_case_state_marginals(self):
        state = AverageCaseState(5, 0.5).to_mixed_state()
        state.validate()
        assert success_probability(state, 0.0) == pytest.approx(0.75, abs=1e-12)

    def test_lifted_state(self):
        diagonal = probabilities(LiftedState(3, 0.4).to_mixed_state())
        assert diagonal[0] == pytest.approx(0.7)
        assert diagonal[-1] == pytest.approx(0.3)


class TestOneShotForms:
    @pytest.mark.parametrize("delta, expected", [(0.0, 0.5), (1.0, 1.0), (0.5, 0.75)])
    def test_oneshot(self, delta, expected):
        assert closed_forms.p_succ_oneshot(delta) == pytest.approx(expected)

    def test_noisy_first_qubit(self):
        assert closed_forms.p_succ_noisy_first_qubit(0.5, 0.0) == closed_forms.p_succ_oneshot(0.5)
        assert closed_forms.p_succ_noisy_first_qubit(0.5, 0.1) == pytest.approx(0.725)

    @pytest.mark.parametrize("delta", [0.0, 0.3, 0.7, 1.0])
    @pytest.mark.parametrize("eps", [0.0, 0.05, 0.2])
    def test_first_qubit_oracle_is_exact(self, delta, eps):
        sigma = first_qubit_biased_state(delta, 3, np.random.default_rng(17))
        sigma.validate()
        expected = closed_forms.p_succ_noisy_first_qubit(delta, eps)
        assert abs(first_qubit_oracle(sigma, eps) - expected) <= 1e-10

    @pytest.mark.parametrize("eps", [0.0, 0.05, 0.2, 1.0])
    def test_first_qubit_reading_only_sees_the_reduced_state(self, eps):
        generator = np.random.default_rng(29)
        channel = Channel.depolarizing_mixing(eps)
        for _ in range(20):
            sigma = MixedState(3, random_density_matrix(3, generator))
            reduced = apply_channel(partial_trace_keep(sigma, 0), channel, 0)
            assert abs(first_qubit_oracle(sigma, eps) - reduced.matrix[0, 0].real) <= 1e-12
            marginal = partial_trace_keep(global_depolarize(sigma, eps), 0)
            assert np.max(np.abs(marginal.matrix - reduced.matrix)) <= 1e-12

    def test_average_case_first_order(self):
        assert closed_forms.exact_noise_coefficient(3) == pytest.approx(0.75)
        assert closed_forms.p_succ_avg_noisy(3, 0.4, 0.01) == pytest.approx(0.697)
        assert closed_forms.p_succ_avg_noisy(3, 0.4, 0.0) == pytest.approx(0.7)

    def test_average_case_slope_five_qubits(self):
        expected = -math.comb(5, 2) * 3 * 0.5 / 32
        assert noise_slope(5, 0.5) == pytest.approx(expected, rel=0.05)

    def test_average_case_oracle_noiseless(self):
        assert average_case_oracle(5, 0.3, 0.0) == pytest.approx(0.65, abs=1e-12)

    def test_lifted_oracle(self):
        assert lifted_oracle(5, 0.5, 0.0) == pytest.approx(closed_forms.p_lifted(0.5, 0.0), abs=1e-12)
        assert abs(lifted_oracle(3, 0.5, 0.01) - closed_forms.p_lifted(0.5, 0.01)) < 1.5 * 0.01 ** 2
        assert closed_forms.p_lifted(0.5, 0.2) == pytest.approx(0.75)

    def test_oracle_size_limit(self):
        with pytest.raises(ValidationError):
            average_case_oracle(MAX_ORACLE_QUBITS + 2, 0.5, 0.0)


class TestStirling:
    def test_small_k(self):
        assert closed_forms.stirling_coefficient(1) == pytest.approx(0.5642, abs=1e-4)
        assert closed_forms.stirling_relative_error(1) == pytest.approx(0.2477, abs=1e-3)

    def test_large_k_errors(self):
        assert closed_forms.stirling_coefficient(50) == pytest.approx(3.989, abs=1e-3)
        assert closed_forms.stirling_relative_error(50) <= 0.02
        assert closed_forms.stirling_relative_error(200) <= 0.01

    def test_error_decreases(self):
        errors = [closed_forms.stirling_relative_error(k) for k in (1, 2, 5, 10, 20, 50, 100, 200)]
        assert all(later < earlier for earlier, later in zip(errors, errors[1:]))

    def test_k_must_be_positive(self):
        with pytest.raises(ValidationError):
            closed_forms.stirling_coefficient(0)


class TestMultishot:
    def test_symmetric_point(self):
        for shots in (1, 25, 1024):
            assert closed_forms.p_multishot(0.5, shots) == pytest.approx(0.5)

    def test_tail(self):
        assert 1.0 - closed_forms.p_multishot(0.75, 100) == pytest.approx(3.9e-9, rel=0.05)

    def test_degenerate_probabilities(self):
        assert closed_forms.p_multishot(1.0, 5) == 1.0
        assert closed_forms.p_multishot(0.0, 5) == 0.0

    def test_shots_must_be_positive(self):
        with pytest.raises(ValidationError):
            closed_forms.p_multishot(0.6, 0)

    def test_matches_majority_vote_simulation(self):
        estimate, se = mc_majority_vote(0.6, 25, 20_000, np.random.default_rng(8))
        assert abs(estimate - closed_forms.p_multishot(0.6, 25)) <= max(4 * se, 0.01)


class TestUnambiguousForms:
    def test_identity_for_every_threshold(self):
        for n in range(3, 16, 2):
            k = (n - 1) // 2
            for l in range(k + 1, n + 1):
                for delta in DELTAS:
                    p0, p1 = closed_forms.unambiguous_probs(n, delta, l)
                    assert closed_forms.p_unambiguous(p0, p1) == pytest.approx((1 + delta) / 2, abs=1e-12)

    def test_no_rejection_at_lowest_threshold(self):
        p0, p1 = closed_forms.unambiguous_probs(5, 0.5, 3)
        assert (p0, p1) == pytest.approx((0.75, 0.25))
        for n in range(3, 16, 2):
            assert closed_forms.expected_shots(n, (n - 1) // 2 + 1) == 1.0

    def test_symmetric_when_no_separation(self):
        p0, p1 = closed_forms.unambiguous_probs(7, 0.0, 6)
        assert p0 == p1

    def test_ratio_examples(self):
        assert closed_forms.p_unambiguous(0.1875, 0.0625) == pytest.approx(0.75)
        assert closed_forms.p_unambiguous(0.3, 0.0) == 1.0
        with pytest.raises(ValidationError):
            closed_forms.p_unambiguous(0.0, 0.0)

    def test_expected_shots(self):
        assert closed_forms.expected_shots(5, 4) == pytest.approx(16 / 6)
        assert closed_forms.expected_shots(3, 3) == 4.0
        assert closed_forms.expected_shots(101, 52) <= 2.0

    def test_threshold_range(self):
        with pytest.raises(ValidationError):
            closed_forms.expected_shots(5, 2)


class TestMonteCarloOracle:
    def test_deterministic_state_is_always_right_at_once(self):
        estimate = mc_unambiguous(3, 1.0, 2, 0.0, 500, np.random.default_rng(2))
        assert estimate.p_unambiguous == 1.0
        assert estimate.mean_shots == 1.0

    def test_matches_closed_forms(self):
        estimate = mc_unambiguous(5, 0.5, 4, 0.0, 20_000, np.random.default_rng(12))
        assert abs(estimate.p_unambiguous - 0.75) <= 4 * estimate.p_unambiguous_se
        assert abs(estimate.mean_shots - 16 / 6) <= 4 * estimate.mean_shots_se

    @pytest.mark.slow
    def test_matches_closed_forms_at_full_trial_count(self):
        estimate = mc_unambiguous(5, 0.5, 4, 0.0, 100_000, np.random.default_rng(2024))
        assert abs(estimate.p_unambiguous - 0.75) <= 3 * estimate.p_unambiguous_se
        assert abs(estimate.mean_shots - 16 / 6) <= 3 * estimate.mean_shots_se

    def test_trial_loop_matches_sequential_decisions(self):
        estimate = mc_unambiguous(5, 0.3, 4, 0.0, 2000, np.random.default_rng(1))
        run = CircuitRun(AverageCaseState(5, 0.3).to_mixed_state())
        shared = np.random.default_rng(1)
        outcomes = [classify_m3(run, ThresholdPolicy(l=4, t_c=None), shared) for _ in range(2000)]
        assert estimate.mean_shots == pytest.approx(np.mean([o.shots_used for o in outcomes]))
        assert estimate.p_unambiguous == pytest.approx(np.mean([o.label is DecisionLabel.CLASS0 for o in outcomes]))

    def test_trials_must_be_positive(self):
        with pytest.raises(ValidationError):
            mc_unambiguous(5, 0.5, 4, 0.0, 0, np.random.default_rng(0))
