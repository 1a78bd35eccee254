import numpy as np
import pytest

from qba.circuits import ControlledPhase, Hadamard, MultiplexedAncillaRotation, Phase, Swap
from qba.simulator import (
    StateVector,
    apply_diagonal,
    apply_gate,
    apply_multiplexed_ancilla_rotation,
    init_amplitudes,
    init_basis,
    postselect,
    probabilities,
    sample,
    sample_counts,
)

SQRT2 = np.sqrt(2.0)


def gate_matrix_via_simulator(gate, num_qubits):
    """Dense gate matrix rebuilt by pushing every basis state through apply_gate."""
    dim = 1 << num_qubits
    u = np.empty((dim, dim), dtype=complex)
    for j in range(dim):
        u[:, j] = apply_gate(init_basis(num_qubits, j), gate).amplitudes
    return u


def random_state(num_qubits, seed):
    rng = np.random.default_rng(seed)
    amp = rng.normal(size=1 << num_qubits) + 1j * rng.normal(size=1 << num_qubits)
    amp /= np.linalg.norm(amp)
    return StateVector(num_qubits, amp)


class TestInit:
    def test_basis_three_qubits(self):
        state = init_basis(3, 1)
        expected = np.zeros(8)
        expected[1] = 1
        np.testing.assert_array_equal(state.amplitudes, expected)

    def test_basis_trivial_cases(self):
        np.testing.assert_array_equal(init_basis(1, 0).amplitudes, [1, 0])
        assert init_basis(4, 15).amplitudes[15] == 1

    def test_basis_out_of_range(self):
        with pytest.raises(IndexError):
            init_basis(3, 8)

    def test_amplitudes_step_input(self):
        state, norm = init_amplitudes(4, [1, 1, 1, 0, 0, 0])
        assert norm == pytest.approx(np.sqrt(3.0))
        expected = np.zeros(16, dtype=complex)
        expected[:3] = 1 / np.sqrt(3.0)
        np.testing.assert_allclose(state.amplitudes, expected, atol=1e-15)

    def test_amplitudes_single_entry(self):
        state, _ = init_amplitudes(2, [1])
        np.testing.assert_array_equal(state.amplitudes, [1, 0, 0, 0])

    def test_amplitudes_normalizes_random_input(self):
        rng = np.random.default_rng(2)
        x = rng.normal(size=5) + 1j * rng.normal(size=5)
        state, norm = init_amplitudes(3, x)
        assert abs(state.norm() - 1.0) < 1e-12
        np.testing.assert_allclose(state.amplitudes[:5] * norm, x, atol=1e-12)

    def test_amplitudes_too_long(self):
        with pytest.raises(ValueError):
            init_amplitudes(2, np.ones(5))

    def test_amplitudes_zero_vector(self):
        with pytest.raises(ValueError):
            init_amplitudes(2, [0, 0])


class TestApplyGate:
    def test_hadamard_on_ground_state(self):
        state = apply_gate(init_basis(1, 0), Hadamard(0))
        np.testing.assert_allclose(state.amplitudes, [1 / SQRT2, 1 / SQRT2], atol=1e-15)

    def test_phase_pi_flips_sign(self):
        state = apply_gate(init_basis(1, 0), Hadamard(0))
        apply_gate(state, Phase(0, np.pi))
        np.testing.assert_allclose(state.amplitudes, [1 / SQRT2, -1 / SQRT2], atol=1e-15)

    def test_controlled_phase_dense_reconstruction(self):
        theta = 0.77
        u = gate_matrix_via_simulator(ControlledPhase(0, 1, theta), 2)
        np.testing.assert_allclose(u, np.diag([1, 1, 1, np.exp(1j * theta)]), atol=1e-14)

    def test_swap_exchanges_bits(self):
        state = init_basis(2, 1)  # qubit 0 set
        apply_gate(state, Swap(0, 1))
        np.testing.assert_array_equal(state.amplitudes, init_basis(2, 2).amplitudes)

    def test_qubit_out_of_range(self):
        with pytest.raises(IndexError):
            apply_gate(init_basis(2, 0), Hadamard(2))

    @pytest.mark.parametrize(
        "gate,qubits",
        [
            (Hadamard(1), 3),
            (Phase(2, -1.3), 3),
            (ControlledPhase(0, 3, 2.6), 5),
            (Swap(1, 4), 5),
            (MultiplexedAncillaRotation(np.exp(1j * np.linspace(0, 3, 16)) * 0.8, ancilla=2), 5),
        ],
    )
    def test_gate_unitarity_via_dense_reconstruction(self, gate, qubits):
        u = gate_matrix_via_simulator(gate, qubits)
        assert np.max(np.abs(u @ u.conj().T - np.eye(1 << qubits))) < 1e-12

    @pytest.mark.parametrize("qubits", [2, 4])
    def test_norm_preserved_per_gate(self, qubits):
        state = random_state(qubits, seed=qubits)
        for gate in (Hadamard(0), Phase(1, 0.4), ControlledPhase(0, 1, -2.0), Swap(0, qubits - 1)):
            apply_gate(state, gate)
            assert abs(state.norm() - 1.0) < 1e-12


class TestApplyDiagonal:
    def test_identity_diagonal(self):
        state = random_state(3, seed=5)
        before = state.amplitudes.copy()
        apply_diagonal(state, np.ones(8, dtype=complex))
        np.testing.assert_array_equal(state.amplitudes, before)

    def test_quadratic_phase_on_basis_state(self):
        state = init_basis(3, 1)
        j = np.arange(8)
        apply_diagonal(state, np.exp(-1j * np.pi * j * j / 3))
        np.testing.assert_allclose(state.amplitudes[1], np.exp(-1j * np.pi / 3), atol=1e-15)

    def test_norm_preserved_for_random_unimodular(self):
        rng = np.random.default_rng(6)
        state = random_state(4, seed=7)
        apply_diagonal(state, np.exp(1j * rng.uniform(0, 2 * np.pi, 16)))
        assert abs(state.norm() - 1.0) < 1e-12

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            apply_diagonal(init_basis(2, 0), np.ones(3, dtype=complex))

    def test_non_unimodular_rejected(self):
        phases = np.ones(4, dtype=complex)
        phases[2] = 0.5
        with pytest.raises(ValueError):
            apply_diagonal(init_basis(2, 0), phases)


class TestMultiplexedRotation:
    def test_all_ones_is_identity(self):
        state = random_state(3, seed=8)
        before = state.amplitudes.copy()
        apply_multiplexed_ancilla_rotation(state, np.ones(4, dtype=complex), ancilla=2)
        np.testing.assert_allclose(state.amplitudes, before, atol=1e-15)

    def test_all_zeros_flips_ancilla(self):
        state = init_basis(3, 2)  # main index 2, ancilla (qubit 2) in |0>
        apply_multiplexed_ancilla_rotation(state, np.zeros(4, dtype=complex), ancilla=2)
        np.testing.assert_array_equal(state.amplitudes, init_basis(3, 6).amplitudes)

    def test_dense_reconstruction_is_unitary(self):
        rng = np.random.default_rng(9)
        betas = rng.uniform(0, 1, 4) * np.exp(1j * rng.uniform(0, 2 * np.pi, 4))
        u = gate_matrix_via_simulator(MultiplexedAncillaRotation(betas, ancilla=2), 3)
        assert np.max(np.abs(u @ u.conj().T - np.eye(8))) < 1e-12

    def test_interior_ancilla_position(self):
        # ancilla on qubit 0: pairs are (even, odd) indices, main index = i >> 1
        betas = np.array([1.0, 0.0], dtype=complex)
        state, _ = init_amplitudes(2, [0.6, 0, 0.8, 0])  # main 0 and 1, ancilla |0>
        apply_multiplexed_ancilla_rotation(state, betas, ancilla=0)
        np.testing.assert_allclose(state.amplitudes, [0.6, 0, 0, 0.8], atol=1e-15)

    def test_overlong_beta_rejected(self):
        with pytest.raises(ValueError):
            apply_multiplexed_ancilla_rotation(init_basis(2, 0), np.ones(4, dtype=complex), 1)

    def test_beta_above_one_rejected(self):
        with pytest.raises(ValueError):
            apply_multiplexed_ancilla_rotation(
                init_basis(2, 0), np.array([1.0 + 1e-6, 1.0]), ancilla=1
            )

    def test_beta_within_float_guard_clamped(self):
        betas = np.array([1.0 + 5e-13, 1.0], dtype=complex)
        state = init_basis(2, 0)
        apply_multiplexed_ancilla_rotation(state, betas, ancilla=1)
        assert abs(state.norm() - 1.0) < 1e-12


class TestPostselect:
    def test_plus_ancilla(self):
        # main qubit |0>, ancilla (qubit 1) in |+>
        amp = np.array([1 / SQRT2, 0, 1 / SQRT2, 0])
        branch, prob = postselect(StateVector(2, amp), qubit=1, outcome=0)
        assert prob == pytest.approx(0.5)
        np.testing.assert_allclose(branch.amplitudes, [1, 0], atol=1e-15)

    def test_certain_branch_unchanged(self):
        state, _ = init_amplitudes(3, [0.6, 0.8])  # qubit 2 is definitely 0
        branch, prob = postselect(state, qubit=2, outcome=0)
        assert prob == pytest.approx(1.0)
        np.testing.assert_allclose(branch.amplitudes, [0.6, 0.8, 0, 0], atol=1e-15)

    def test_unnormalized_branch_carries_probability(self):
        state = random_state(4, seed=10)
        branch, prob = postselect(state, qubit=1, outcome=1, normalize=False)
        assert abs(np.sum(np.abs(branch.amplitudes) ** 2) - prob) < 1e-12

    def test_zero_probability_branch_rejected(self):
        with pytest.raises(ValueError):
            postselect(init_basis(2, 0), qubit=1, outcome=1)


class TestMeasurement:
    def test_basis_state_probabilities(self):
        p = probabilities(init_basis(3, 5))
        assert p[5] == 1.0 and p.sum() == pytest.approx(1.0)

    def test_uniform_superposition(self):
        state = init_basis(2, 0)
        apply_gate(state, Hadamard(0))
        apply_gate(state, Hadamard(1))
        np.testing.assert_allclose(probabilities(state), [0.25] * 4, atol=1e-15)

    def test_probabilities_sum_to_one(self):
        p = probabilities(random_state(5, seed=13))
        assert abs(p.sum() - 1.0) < 1e-9

    def test_sample_fixed_seed_reproducible(self):
        state = random_state(3, seed=14)
        assert sample(state, shots=500, seed=99) == sample(state, shots=500, seed=99)

    def test_sample_frequencies_converge(self):
        state = init_basis(2, 0)
        apply_gate(state, Hadamard(0))
        apply_gate(state, Hadamard(1))
        counts = sample(state, shots=40000, seed=3)
        for i in range(4):
            assert abs(counts.get(i, 0) / 40000 - 0.25) < 0.02

    def test_sample_counts_shot_total(self):
        counts = sample_counts([0.5, 0.5], shots=17, seed=0)
        assert counts.sum() == 17

    def test_sample_requires_positive_shots(self):
        with pytest.raises(ValueError):
            sample(init_basis(1, 0), shots=0, seed=0)
