"""Dense state-vector simulator.

A StateVector holds 2^q complex amplitudes with qubit 0 as the
least-significant bit of the basis index (little-endian everywhere).
Operations mutate the amplitudes in place and return the state for
chaining; callers must not apply operations concurrently to one state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuits import (
    Circuit,
    ControlledPhase,
    Gate,
    Hadamard,
    MultiplexedAncillaRotation,
    Phase,
    Swap,
)
from .numerics import as_complex_vector

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

# Below this branch probability, post-selection is considered degenerate.
MIN_BRANCH_PROBABILITY = 1e-15


@dataclass
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be >= 1")
        amp = np.asarray(self.amplitudes, dtype=np.complex128)
        if amp.shape != (1 << self.num_qubits,):
            raise ValueError(f"expected {1 << self.num_qubits} amplitudes, got shape {amp.shape}")
        self.amplitudes = amp

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def init_basis(num_qubits: int, index: int) -> StateVector:
    """Computational basis state |index> on num_qubits qubits."""
    if num_qubits < 1:
        raise ValueError("num_qubits must be >= 1")
    if not 0 <= index < (1 << num_qubits):
        raise IndexError(f"basis index {index} out of range for {num_qubits} qubits")
    amp = np.zeros(1 << num_qubits, dtype=np.complex128)
    amp[index] = 1.0
    return StateVector(num_qubits, amp)


def init_amplitudes(num_qubits: int, x) -> tuple[StateVector, float]:
    """Load x into the lowest basis indices, normalized to unit L2 norm.

    Returns (state, norm) where norm = ||x|| is the factor divided out.
    """
    x = as_complex_vector(x)
    dim = 1 << num_qubits
    if num_qubits < 1:
        raise ValueError("num_qubits must be >= 1")
    if x.size > dim:
        raise ValueError(f"vector of length {x.size} does not fit in {num_qubits} qubits")
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        raise ValueError("cannot normalize a zero vector")
    amp = np.zeros(dim, dtype=np.complex128)
    amp[: x.size] = x / norm
    return StateVector(num_qubits, amp), norm


def _check_qubit_index(state: StateVector, qubit: int) -> None:
    if not 0 <= qubit < state.num_qubits:
        raise IndexError(f"qubit {qubit} out of range for {state.num_qubits}-qubit state")


def _bit_view(state: StateVector, assignments: dict[int, int]):
    """Writable view of amplitudes.reshape([2]*q) with the given qubit bits fixed."""
    q = state.num_qubits
    sel: list = [slice(None)] * q
    for qubit, bit in assignments.items():
        # axis q-1-t holds qubit t (C order, little-endian); length-1 slices keep
        # the result an ndarray view even when every axis is pinned
        sel[q - 1 - qubit] = slice(bit, bit + 1)
    return state.amplitudes.reshape([2] * q)[tuple(sel)]


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply one IR gate in place."""
    if isinstance(gate, Hadamard):
        _check_qubit_index(state, gate.target)
        v0 = _bit_view(state, {gate.target: 0})
        v1 = _bit_view(state, {gate.target: 1})
        lo, hi = v0.copy(), v1.copy()
        v0[...] = (lo + hi) * _INV_SQRT2
        v1[...] = (lo - hi) * _INV_SQRT2
    elif isinstance(gate, Phase):
        _check_qubit_index(state, gate.target)
        v1 = _bit_view(state, {gate.target: 1})
        v1 *= np.exp(1j * gate.angle)
    elif isinstance(gate, ControlledPhase):
        _check_qubit_index(state, gate.control)
        _check_qubit_index(state, gate.target)
        if gate.control == gate.target:
            raise ValueError("control and target must differ")
        v11 = _bit_view(state, {gate.control: 1, gate.target: 1})
        v11 *= np.exp(1j * gate.angle)
    elif isinstance(gate, Swap):
        _check_qubit_index(state, gate.a)
        _check_qubit_index(state, gate.b)
        if gate.a == gate.b:
            raise ValueError("swap qubits must differ")
        v01 = _bit_view(state, {gate.a: 0, gate.b: 1})
        v10 = _bit_view(state, {gate.a: 1, gate.b: 0})
        tmp = v01.copy()
        v01[...] = v10
        v10[...] = tmp
    elif isinstance(gate, MultiplexedAncillaRotation):
        apply_multiplexed_ancilla_rotation(state, gate.betas, gate.ancilla)
    else:
        raise TypeError(f"unknown gate type {type(gate).__name__}")
    return state


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    if circuit.width > state.num_qubits:
        raise ValueError(f"circuit width {circuit.width} exceeds state size {state.num_qubits}")
    for gate in circuit.gates:
        apply_gate(state, gate)
    return state


def apply_diagonal(state: StateVector, phases) -> StateVector:
    """Multiply amplitude j by phases[j]; phases must be unimodular."""
    phases = as_complex_vector(phases)
    if phases.size != state.dim:
        raise ValueError(f"diagonal length {phases.size} != state dimension {state.dim}")
    if np.max(np.abs(np.abs(phases) - 1.0)) > 1e-12:
        raise ValueError("diagonal entries must have unit magnitude")
    state.amplitudes *= phases
    return state


def apply_multiplexed_ancilla_rotation(state: StateVector, betas, ancilla: int) -> StateVector:
    """Rotate each (main index k) ancilla pair by [[b_k, -g_k], [g_k, conj(b_k)]].

    g_k = sqrt(1 - |b_k|^2); |b_k| up to 1 + 1e-12 is clamped to 1, anything
    larger means the normalization constant was chosen too small.
    """
    if state.num_qubits < 2:
        raise ValueError("multiplexed rotation needs at least 2 qubits")
    _check_qubit_index(state, ancilla)
    betas = as_complex_vector(betas)
    if betas.size != state.dim // 2:
        raise ValueError(f"need {state.dim // 2} betas (one per main index), got {betas.size}")
    mags = np.abs(betas)
    excess = float(np.max(mags)) - 1.0
    if excess > 1e-12:
        raise ValueError(f"|beta| exceeds 1 by {excess:.3e}; normalization constant too small")
    gammas = np.sqrt(np.clip(1.0 - mags**2, 0.0, None))
    mask = 1 << ancilla
    idx = np.arange(state.dim)
    lo = idx[(idx & mask) == 0]
    k = (lo & (mask - 1)) | ((lo >> 1) & ~(mask - 1))  # compress the ancilla bit out
    b, g = betas[k], gammas[k]
    amp = state.amplitudes
    a0 = amp[lo]
    a1 = amp[lo | mask]
    amp[lo] = b * a0 - g * a1
    amp[lo | mask] = g * a0 + np.conj(b) * a1
    return state


def postselect(
    state: StateVector, qubit: int, outcome: int, normalize: bool = True
) -> tuple[StateVector, float]:
    """Project onto the given measurement outcome of one qubit.

    Returns (branch over q-1 qubits, probability). With normalize=False the
    branch keeps its raw amplitudes, so ||branch||^2 == probability; this is
    the hook for exact-amplitude checks.
    """
    _check_qubit_index(state, qubit)
    if outcome not in (0, 1):
        raise ValueError("outcome must be 0 or 1")
    if state.num_qubits < 2:
        raise ValueError("cannot postselect the only qubit away")
    mask = 1 << qubit
    idx = np.arange(state.dim)
    keep = idx[((idx & mask) != 0) == bool(outcome)]
    branch = state.amplitudes[keep].copy()
    prob = float(np.sum(np.abs(branch) ** 2))
    if prob < MIN_BRANCH_PROBABILITY:
        raise ValueError(f"branch probability {prob:.3e} below {MIN_BRANCH_PROBABILITY:.0e}")
    if normalize:
        branch /= math.sqrt(prob)
    return StateVector(state.num_qubits - 1, branch), prob


def probabilities(state: StateVector) -> np.ndarray:
    return np.abs(state.amplitudes) ** 2


def sample_counts(probs, shots: int, seed: int) -> np.ndarray:
    """Multinomial draw of `shots` outcomes; deterministic for a fixed seed."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    p = np.asarray(probs, dtype=np.float64)
    if np.any(p < -1e-12):
        raise ValueError("probabilities must be non-negative")
    p = np.clip(p, 0.0, None)
    total = p.sum()
    if total <= 0.0:
        raise ValueError("probabilities sum to zero")
    rng = np.random.default_rng(seed)
    return rng.multinomial(shots, p / total)


def sample(state: StateVector, shots: int, seed: int) -> dict[int, int]:
    """Measurement histogram {basis index: count}; zero-count indices omitted."""
    counts = sample_counts(probabilities(state), shots, seed)
    return {int(i): int(c) for i, c in enumerate(counts) if c > 0}
