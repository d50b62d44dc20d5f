import numpy as np
import pytest

from uqc.domain.noise.entities.channel import Channel, ChannelOp
from uqc.domain.qsim.entities.circuit import Circuit
from uqc.domain.qsim.entities.gate import Gate, GateKind
from uqc.domain.qsim.entities.states import MixedState, PureState, ShotSample
from uqc.domain.qsim.services.simulator import (
    apply_gate,
    dephase,
    expval_z,
    expvals_z,
    hamming_weights,
    partial_trace_keep,
    probabilities,
    run_circuit,
    sample,
    _z_signs,
    sample_indices,
)
from uqc.domain.shared.errors import ValidationError
from tests.support import random_density_matrix, random_pure_amplitudes


class TestGate:
    @pytest.mark.parametrize("gate", [
        Gate.h(0),
        Gate.ry(0, 0.731),
        Gate.p(0, -2.4),
        Gate.cnot(0, 1),
    ])
    def test_matrices_are_unitary(self, gate):
        u = gate.matrix()
        assert np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) < 1e-12

    def test_cnot_needs_distinct_qubits(self):
        with pytest.raises(ValidationError):
            Gate.cnot(1, 1)

    def test_parametric_gate_needs_finite_angle(self):
        with pytest.raises(ValidationError):
            Gate(GateKind.RY, (0,), float("nan"))
        with pytest.raises(ValidationError):
            Gate(GateKind.H, (0,), 0.3)

    def test_trainable_binding(self):
        assert Gate.ry(1, 0.2, binding=(0, 1)).is_trainable
        assert not Gate.ry(1, 0.2).is_trainable


class TestStates:
    def test_basis_uses_first_qubit_as_most_significant_bit(self):
        state = PureState.basis("100")
        assert np.argmax(np.abs(state.amplitudes)) == 4

    def test_wrong_amplitude_count_is_rejected(self):
        with pytest.raises(ValidationError):
            PureState(2, np.ones(3, dtype=complex))

    def test_mixed_state_validation(self):
        MixedState.maximally_mixed(2).validate()
        with pytest.raises(ValidationError):
            MixedState(1, np.array([[0.5, 0.3], [0.0, 0.5]], dtype=complex)).validate()
        with pytest.raises(ValidationError):
            MixedState(1, np.diag([1.2, -0.2]).astype(complex)).validate()

    def test_shot_sample_bits_and_weight(self):
        shot = ShotSample.from_index(5, 3)
        assert str(shot) == "101"
        assert shot.weight == 2


class TestApplyGate:
    def test_hadamard_on_zero(self):
        state = apply_gate(PureState.zero(1), Gate.h(0))
        assert np.allclose(state.amplitudes, [1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-12)

    def test_ry_pi_flips_zero_to_one(self):
        state = apply_gate(PureState.zero(1), Gate.ry(0, np.pi))
        assert np.allclose(np.abs(state.amplitudes), [0.0, 1.0], atol=1e-12)

    def test_cnot_control_one_target_zero(self):
        state = apply_gate(PureState.basis("01"), Gate.cnot(1, 0))
        assert np.allclose(state.amplitudes, PureState.basis("11").amplitudes)

    def test_cnot_leaves_state_alone_when_control_is_zero(self):
        state = apply_gate(PureState.basis("10"), Gate.cnot(1, 0))
        assert np.allclose(state.amplitudes, PureState.basis("10").amplitudes)

    def test_out_of_range_qubit(self):
        with pytest.raises(ValidationError):
            apply_gate(PureState.zero(2), Gate.h(2))

    def test_norm_is_preserved(self, rng):
        state = PureState(3, random_pure_amplitudes(3, rng))
        for gate in (Gate.h(0), Gate.ry(2, 1.1), Gate.p(1, 0.4), Gate.cnot(2, 1)):
            state = apply_gate(state, gate)
            state.validate()

    def test_mixed_path_matches_pure_path(self, rng):
        pure = PureState(3, random_pure_amplitudes(3, rng))
        mixed = pure.to_mixed()
        for gate in (Gate.h(1), Gate.cnot(0, 2), Gate.ry(0, 0.3), Gate.p(2, 1.7), Gate.cnot(2, 1)):
            pure = apply_gate(pure, gate)
            mixed = apply_gate(mixed, gate)
        assert np.max(np.abs(pure.to_mixed().matrix - mixed.matrix)) < 1e-10
        mixed.validate()


class TestRunCircuit:
    def test_empty_circuit_returns_zero_state(self):
        state = run_circuit(Circuit(2))
        assert isinstance(state, PureState)
        assert np.allclose(state.amplitudes, PureState.zero(2).amplitudes)

    def test_channels_select_mixed_backend(self):
        circuit = Circuit(1, (Gate.h(0), ChannelOp(Channel.phase_damping(1.0), 0)))
        state = run_circuit(circuit)
        assert isinstance(state, MixedState)
        assert np.allclose(state.matrix, np.eye(2) / 2)

    def test_channels_on_pure_initial_state_are_rejected(self):
        circuit = Circuit(1, (ChannelOp(Channel.phase_damping(0.1), 0),))
        with pytest.raises(ValidationError):
            run_circuit(circuit, initial=PureState.zero(1))

    def test_width_mismatch(self):
        with pytest.raises(ValidationError):
            run_circuit(Circuit(2), initial=PureState.zero(3))

    def test_circuit_rejects_out_of_range_targets(self):
        with pytest.raises(ValidationError):
            Circuit(2, (Gate.cnot(0, 2),))


class TestExpectationValues:
    def test_zero_state(self):
        assert expval_z(PureState.zero(1), 0) == pytest.approx(1.0)

    def test_hadamard_state(self):
        state = apply_gate(PureState.zero(1), Gate.h(0))
        assert abs(expval_z(state, 0)) < 1e-12

    def test_mixed_diagonal(self):
        state = MixedState.from_diagonal(np.array([0.75, 0.25]))
        assert expval_z(state, 0) == pytest.approx(0.5)

    def test_matches_trace_formula(self, rng):
        rho = random_density_matrix(2, rng)
        z_on_second = np.kron(np.eye(2), np.diag([1.0, -1.0]))
        expected = float(np.real(np.trace(rho @ z_on_second)))
        assert expvals_z(MixedState(2, rho))[1] == pytest.approx(expected, abs=1e-12)

    def test_index_out_of_range(self):
        with pytest.raises(ValidationError):
            expval_z(PureState.zero(2), 2)

    def test_hamming_weights(self):
        assert hamming_weights(3).tolist() == [0, 1, 1, 2, 1, 2, 2, 3]

    def test_cached_tables_are_read_only(self):
        with pytest.raises(ValueError):
            hamming_weights(3)[0] = 7
        with pytest.raises(ValueError):
            _z_signs(3)[0, 0] = 5.0
        assert expvals_z(PureState.zero(3)).tolist() == [1.0, 1.0, 1.0]


class TestSampling:
    def test_basis_state_always_samples_its_bits(self, rng):
        state = PureState.basis("101")
        assert all(str(sample(state, rng)) == "101" for _ in range(20))

    def test_empirical_frequency_of_hadamard(self):
        state = apply_gate(PureState.zero(1), Gate.h(0))
        draws = sample_indices(state, 100_000, np.random.default_rng(99))
        assert abs(np.mean(draws == 0) - 0.5) < 0.01

    def test_same_seed_same_sequence(self):
        state = PureState(2, random_pure_amplitudes(2, np.random.default_rng(5)))
        first = sample_indices(state, 50, np.random.default_rng(8))
        second = sample_indices(state, 50, np.random.default_rng(8))
        assert np.array_equal(first, second)

    def test_negative_diagonal_is_rejected(self):
        with pytest.raises(ValidationError):
            probabilities(MixedState(1, np.diag([1.1, -0.1]).astype(complex)))

    def test_negative_shot_count(self, rng):
        with pytest.raises(ValidationError):
            sample_indices(PureState.zero(1), -1, rng)


class TestPartialTraceAndDephasing:
    def test_product_state(self):
        reduced = partial_trace_keep(PureState.basis("00").to_mixed(), 0)
        assert np.allclose(reduced.matrix, np.diag([1.0, 0.0]))

    def test_bell_state(self):
        bell = PureState(2, np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)).to_mixed()
        assert np.allclose(partial_trace_keep(bell, 0).matrix, np.eye(2) / 2)

    def test_diagonal_marginal(self):
        state = MixedState.from_diagonal(np.array([0.4, 0.1, 0.3, 0.2]))
        assert np.allclose(partial_trace_keep(state, 0).matrix, np.diag([0.5, 0.5]))
        assert np.allclose(partial_trace_keep(state, 1).matrix, np.diag([0.7, 0.3]))

    def test_partial_trace_index_out_of_range(self):
        with pytest.raises(ValidationError):
            partial_trace_keep(MixedState.zero(2), 5)

    def test_dephase_hadamard_state(self):
        plus = apply_gate(PureState.zero(1), Gate.h(0)).to_mixed()
        assert np.allclose(dephase(plus).matrix, np.eye(2) / 2)

    def test_dephase_is_idempotent_and_keeps_diagonal_projections(self, rng):
        rho = MixedState(3, random_density_matrix(3, rng))
        once = dephase(rho)
        assert np.allclose(dephase(once).matrix, once.matrix)
        projector = np.diag((hamming_weights(3) <= 1).astype(float))
        assert np.trace(once.matrix @ projector) == pytest.approx(np.trace(rho.matrix @ projector), abs=1e-12)
        once.validate()
