import numpy as np
import pytest

from uqc.domain.decision.entities.decision import (
    DecisionLabel,
    DecisionOutcome,
    Estimator,
    FallbackPolicy,
    HammingProjector,
    ThresholdPolicy,
)
from uqc.domain.decision.services.classifiers import (
    CircuitRun,
    classify_m1,
    classify_m2,
    classify_m3,
    classify_spin_vector,
    projector_trace,
    reject_fallback,
)
from uqc.domain.decision.services.execution_counter import ExecutionCounter
from uqc.domain.qsim.entities.gate import Gate
from uqc.domain.qsim.entities.states import MixedState, PureState
from uqc.domain.qsim.services.simulator import apply_gate
from uqc.domain.shared.errors import ValidationError


class TestManyShotModels:
    def test_m1_zero_state(self, rng):
        run = CircuitRun(PureState.zero(3))
        prediction = classify_m1(run, 1024, rng)
        assert prediction.label is DecisionLabel.CLASS0
        assert prediction.probability == 0.0
        assert prediction.shots_used == 1024
        assert run.counter.total == 1024

    def test_m1_analytic_from_first_qubit(self, rng):
        run = CircuitRun(MixedState.from_diagonal(np.array([0.4, 0.6])))
        prediction = classify_m1(run, 10, rng, Estimator.ANALYTIC)
        assert prediction.probability == pytest.approx(0.6)
        assert prediction.label is DecisionLabel.CLASS1
        assert run.counter.total == 10

    def test_tie_goes_to_class1(self, rng):
        run = CircuitRun(apply_gate(PureState.zero(1), Gate.h(0)))
        prediction = classify_m1(run, 8, rng, Estimator.ANALYTIC)
        assert prediction.probability == pytest.approx(0.5)
        assert prediction.label is DecisionLabel.CLASS1

    def test_m1_reads_only_the_first_qubit(self, rng):
        prediction = classify_m1(CircuitRun(PureState.basis("011")), 16, rng)
        assert prediction.label is DecisionLabel.CLASS0

    @pytest.mark.parametrize("bits, label", [("010", DecisionLabel.CLASS0), ("110", DecisionLabel.CLASS1)])
    def test_m2_majority_vote(self, bits, label, rng):
        prediction = classify_m2(CircuitRun(PureState.basis(bits)), 32, rng)
        assert prediction.label is label

    def test_m2_analytic_uses_mean_z(self, rng):
        run = CircuitRun(PureState.basis("110"))
        prediction = classify_m2(run, 4, rng, Estimator.ANALYTIC)
        # <Z> = (-1, -1, 1)
        assert prediction.probability == pytest.approx((1.0 + 1.0 / 3.0) / 2.0)

    def test_shots_must_be_positive(self, rng):
        with pytest.raises(ValidationError):
            classify_m2(CircuitRun(PureState.zero(2)), 0, rng)


class TestUnambiguousModel:
    @pytest.mark.parametrize("bits, label", [("000", DecisionLabel.CLASS0), ("111", DecisionLabel.CLASS1)])
    def test_identical_bits_are_accepted_at_once(self, bits, label, rng):
        run = CircuitRun(PureState.basis(bits))
        outcome = classify_m3(run, ThresholdPolicy(l=3), rng)
        assert outcome.label is label
        assert outcome.shots_used == 1
        assert outcome.accepted
        assert run.counter.total == 1

    def test_mixed_bits_exhaust_the_cap(self, rng):
        run = CircuitRun(PureState.basis("001"))
        outcome = classify_m3(run, ThresholdPolicy(l=3, t_c=5), rng)
        assert outcome.label is DecisionLabel.REJECT
        assert outcome.shots_used == 5
        assert outcome.attempt_weights == (1, 1, 1, 1, 1)
        assert run.counter.total == 5

    def test_lower_threshold_accepts_majority(self, rng):
        outcome = classify_m3(CircuitRun(PureState.basis("001")), ThresholdPolicy(l=2), rng)
        assert outcome.label is DecisionLabel.CLASS0

    def test_unbounded_loop_with_zero_acceptance_is_refused(self, rng):
        with pytest.raises(ValidationError):
            classify_m3(CircuitRun(PureState.basis("001")), ThresholdPolicy(l=3, t_c=None), rng)

    def test_threshold_must_separate_regions(self, rng):
        with pytest.raises(ValidationError):
            classify_m3(CircuitRun(PureState.zero(3)), ThresholdPolicy(l=1), rng)

    def test_uniform_state_mean_shots(self):
        run = CircuitRun(MixedState.maximally_mixed(3))
        generator = np.random.default_rng(31)
        policy = ThresholdPolicy(l=3, t_c=None)
        shots = [classify_m3(run, policy, generator).shots_used for _ in range(20_000)]
        # geometric with acceptance 2/8
        standard_error = np.sqrt(0.75) / 0.25 / np.sqrt(len(shots))
        assert abs(np.mean(shots) - 4.0) < 4 * standard_error
        assert run.counter.total == sum(shots)

    def test_same_generator_seed_same_outcome(self):
        run = CircuitRun(MixedState.maximally_mixed(3))
        policy = ThresholdPolicy(l=3, t_c=50)
        first = classify_m3(run, policy, np.random.default_rng(4))
        second = classify_m3(run, policy, np.random.default_rng(4))
        assert first == second

    def test_each_attempt_consumes_one_draw(self):
        run = CircuitRun(MixedState.maximally_mixed(3))
        policy = ThresholdPolicy(l=3, t_c=None)
        shared = np.random.default_rng(8)
        outcomes = [classify_m3(run, policy, shared) for _ in range(200)]
        replay = np.random.default_rng(8)
        replay.random(sum(o.shots_used for o in outcomes))
        assert shared.random() == replay.random()

    def test_shared_generator_sequence_is_reproducible(self):
        run = CircuitRun(MixedState.maximally_mixed(5))
        policy = ThresholdPolicy(l=4, t_c=None)
        first_rng, second_rng = np.random.default_rng(1), np.random.default_rng(1)
        first = [classify_m3(run, policy, first_rng) for _ in range(300)]
        second = [classify_m3(run, policy, second_rng) for _ in range(300)]
        assert first == second

    def test_spin_vector_form(self):
        assert classify_spin_vector(np.array([1, 1, 1]), 3) is DecisionLabel.CLASS0
        assert classify_spin_vector(np.array([-1, -1, -1]), 3) is DecisionLabel.CLASS1
        assert classify_spin_vector(np.array([1, -1, 1]), 3) is DecisionLabel.REJECT
        assert classify_spin_vector(np.array([1, -1, 1]), 2) is DecisionLabel.CLASS0


class TestProjector:
    @pytest.mark.parametrize("n, r, trace", [(3, 2, 4), (5, 4, 6), (5, 5, 1)])
    def test_trace(self, n, r, trace):
        assert projector_trace(n, r) == trace

    def test_threshold_out_of_range(self):
        with pytest.raises(ValidationError):
            HammingProjector(3, 0)

    def test_membership(self):
        projector = HammingProjector(5, 4)
        assert projector.contains(1) and not projector.contains(2)


class TestFallback:
    def test_majority_of_attempts(self):
        outcome = DecisionOutcome(DecisionLabel.REJECT, 3, False, (1, 1, 2))
        assert reject_fallback(outcome, FallbackPolicy.MAJORITY_OF_ATTEMPTS, 3) is DecisionLabel.CLASS0

    def test_fixed_class0(self):
        outcome = DecisionOutcome(DecisionLabel.REJECT, 2, False, (2, 2))
        assert reject_fallback(outcome, FallbackPolicy.FIXED_CLASS0, 3) is DecisionLabel.CLASS0

    def test_no_attempts_is_an_error(self):
        outcome = DecisionOutcome(DecisionLabel.REJECT, 1, False, ())
        with pytest.raises(ValidationError):
            reject_fallback(outcome, FallbackPolicy.MAJORITY_OF_ATTEMPTS, 3)

    def test_accepted_outcome_is_an_error(self):
        outcome = DecisionOutcome(DecisionLabel.CLASS1, 1, True, (3,))
        with pytest.raises(ValidationError):
            reject_fallback(outcome, FallbackPolicy.FIXED_CLASS0, 3)

    def test_inconsistent_outcome(self):
        with pytest.raises(ValidationError):
            DecisionOutcome(DecisionLabel.REJECT, 1, True)


class TestExecutionCounter:
    def test_record_and_merge(self):
        first, second = ExecutionCounter(), ExecutionCounter()
        first.record(3)
        second.record(4, tag="eval")
        first.merge(second)
        assert first.snapshot() == {"default": 3, "eval": 4}
        assert first.total == 7

    def test_negative_count(self):
        with pytest.raises(ValueError):
            ExecutionCounter().record(-1)


def _bitstrings(n: int):
    return [format(i, f"0{n}b") for i in range(2 ** n)]


def _per_shot_m3(bits: str, l: int) -> DecisionLabel:
    run = CircuitRun(PureState.basis(bits))
    return classify_m3(run, ThresholdPolicy(l=l, t_c=1), np.random.default_rng(0)).label


def _per_shot_m2(bits: str) -> DecisionLabel:
    return classify_m2(CircuitRun(PureState.basis(bits)), 1, np.random.default_rng(0)).label


class TestDecisionRegions:
    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_m2_splits_bitstrings_in_half(self, n):
        labels = [_per_shot_m2(bits) for bits in _bitstrings(n)]
        assert labels.count(DecisionLabel.CLASS0) == labels.count(DecisionLabel.CLASS1) == 2 ** (n - 1)
        for bits, label in zip(_bitstrings(n), labels):
            expected = DecisionLabel.CLASS1 if 2 * bits.count("1") > n else DecisionLabel.CLASS0
            assert label is expected

    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_m3_regions_partition_bitstrings(self, n):
        k = (n - 1) // 2
        for l in range(k + 1, n + 1):
            regions = {label: set() for label in DecisionLabel}
            for bits in _bitstrings(n):
                regions[_per_shot_m3(bits, l)].add(bits)
            size = projector_trace(n, l)
            assert len(regions[DecisionLabel.CLASS0]) == len(regions[DecisionLabel.CLASS1]) == size
            assert len(regions[DecisionLabel.REJECT]) == 2 ** n - 2 * size
            assert all(bits.count("1") <= n - l for bits in regions[DecisionLabel.CLASS0])
            assert all(bits.count("1") >= l for bits in regions[DecisionLabel.CLASS1])
            assert all(n - l < bits.count("1") < l for bits in regions[DecisionLabel.REJECT])

    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_lowest_threshold_matches_majority_vote(self, n):
        k = (n - 1) // 2
        for bits in _bitstrings(n):
            assert _per_shot_m3(bits, k + 1) is _per_shot_m2(bits)
