"""Gate IR and circuit builders.

Gate kinds: Hadamard, Phase, ControlledPhase, Swap, and the macro
MultiplexedAncillaRotation (one 2x2 ancilla rotation per main-register
index). Circuits are immutable ordered gate lists with a fixed width.

Builders:
 - qft_circuit(m, inverse): radix-2 QFT whose dense matrix is the unitary
   DFT with kernel exp(-2*pi*i*j*k/M) (conjugate transpose for inverse)
 - quadratic_phase_circuit(m, theta): the diagonal |j> -> e^{i*theta*j^2}|j>
   synthesized from the bit expansion of j^2 with m(m+1)/2 phase-type gates

circuit_to_matrix reconstructs the dense unitary by left-multiplying gate
matrices in order; it is implemented independently of the state-vector
simulator so the two paths cross-check each other.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

_TWO_PI = 2.0 * math.pi
_INV_SQRT2 = 1.0 / math.sqrt(2.0)

# Dense reconstruction above this width would allocate multi-GB matrices.
MAX_DENSE_QUBITS = 12


def _reduce_angle(angle: float) -> float:
    if not math.isfinite(angle):
        raise ValueError(f"gate angle must be finite, got {angle!r}")
    return math.fmod(angle, _TWO_PI)


def _check_qubit(index: int, name: str) -> None:
    if index < 0:
        raise ValueError(f"{name} index must be non-negative, got {index}")


@dataclass(frozen=True)
class Hadamard:
    target: int

    def __post_init__(self):
        _check_qubit(self.target, "target")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class Phase:
    """|1> -> e^{i*angle}|1> on the target qubit; angle stored reduced mod 2*pi."""

    target: int
    angle: float

    def __post_init__(self):
        _check_qubit(self.target, "target")
        object.__setattr__(self, "angle", _reduce_angle(self.angle))

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class ControlledPhase:
    """e^{i*angle} on basis states where control and target bits are both 1."""

    control: int
    target: int
    angle: float

    def __post_init__(self):
        _check_qubit(self.control, "control")
        _check_qubit(self.target, "target")
        if self.control == self.target:
            raise ValueError("control and target must differ")
        object.__setattr__(self, "angle", _reduce_angle(self.angle))

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.control, self.target)


@dataclass(frozen=True)
class Swap:
    a: int
    b: int

    def __post_init__(self):
        _check_qubit(self.a, "a")
        _check_qubit(self.b, "b")
        if self.a == self.b:
            raise ValueError("swap qubits must differ")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.a, self.b)


@dataclass(frozen=True, eq=False)
class MultiplexedAncillaRotation:
    """For each main-register index k, rotate the ancilla pair by
    [[beta_k, -gamma_k], [gamma_k, conj(beta_k)]] with gamma_k = sqrt(1-|beta_k|^2).

    betas must satisfy |beta_k| <= 1 (a 1e-12 float guard is tolerated and
    clamped on application). The main-register index is the basis index with
    the ancilla bit compressed out, low bits first.
    """

    betas: np.ndarray
    ancilla: int

    def __post_init__(self):
        _check_qubit(self.ancilla, "ancilla")
        betas = np.asarray(self.betas, dtype=np.complex128)
        if betas.ndim != 1 or betas.size < 1 or betas.size & (betas.size - 1):
            raise ValueError("betas must be a 1-D vector of power-of-two length")
        excess = float(np.max(np.abs(betas))) - 1.0
        if excess > 1e-12:
            raise ValueError(f"|beta| exceeds 1 by {excess:.3e}; normalization constant too small")
        betas.flags.writeable = False
        object.__setattr__(self, "betas", betas)

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.ancilla,)


Gate = Union[Hadamard, Phase, ControlledPhase, Swap, MultiplexedAncillaRotation]

_KIND_NAMES = {
    Hadamard: "hadamard",
    Phase: "phase",
    ControlledPhase: "controlled_phase",
    Swap: "swap",
    MultiplexedAncillaRotation: "multiplexed_ancilla_rotation",
}


def gate_kind(gate: Gate) -> str:
    return _KIND_NAMES[type(gate)]


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over `width` qubits; immutable after construction."""

    width: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("circuit width must be >= 1")
        object.__setattr__(self, "gates", tuple(self.gates))
        for gate in self.gates:
            for q in gate.qubits:
                if q >= self.width:
                    raise ValueError(f"gate {gate_kind(gate)} uses qubit {q} outside width {self.width}")
            if isinstance(gate, MultiplexedAncillaRotation):
                expected = 1 << (self.width - 1)
                if gate.betas.size != expected:
                    raise ValueError(
                        f"multiplexed rotation needs {expected} betas for width {self.width}, got {gate.betas.size}"
                    )

    def __len__(self) -> int:
        return len(self.gates)


def qft_circuit(m: int, inverse: bool = False) -> Circuit:
    """m-qubit QFT over M = 2^m with matrix entries exp(-2*pi*i*j*k/M)/sqrt(M).

    Layout: per target qubit one Hadamard plus a controlled-phase ladder from
    the lower qubits, then floor(m/2) swaps to undo the bit reversal. Total
    m + m(m-1)/2 + floor(m/2) gates. The inverse is the reversed gate list
    with negated angles.
    """
    if m < 1:
        raise ValueError("qft_circuit requires m >= 1")
    gates: list[Gate] = []
    for t in range(m - 1, -1, -1):
        gates.append(Hadamard(t))
        for c in range(t - 1, -1, -1):
            gates.append(ControlledPhase(c, t, -_TWO_PI / (1 << (t - c + 1))))
    for i in range(m // 2):
        gates.append(Swap(i, m - 1 - i))
    if inverse:
        gates = [_dagger(g) for g in reversed(gates)]
    return Circuit(m, tuple(gates))


def _dagger(gate: Gate) -> Gate:
    if isinstance(gate, Phase):
        return Phase(gate.target, -gate.angle)
    if isinstance(gate, ControlledPhase):
        return ControlledPhase(gate.control, gate.target, -gate.angle)
    return gate  # Hadamard and Swap are self-inverse


def quadratic_phase_circuit(m: int, theta: float) -> Circuit:
    """Diagonal |j> -> e^{i*theta*j^2}|j> on m qubits, exactly m(m+1)/2 gates.

    Uses j^2 = sum_l j_l 4^l + sum_{l<r} j_l j_r 2^{l+r+1}: a Phase on each
    bit and a ControlledPhase on each bit pair. Phase-type gates (not R_Z)
    keep the j = 0 entry exactly 1 with no global-phase bookkeeping.
    """
    if m < 1:
        raise ValueError("quadratic_phase_circuit requires m >= 1")
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    gates: list[Gate] = []
    for l in range(m):
        gates.append(Phase(l, theta * (1 << (2 * l))))
    for l in range(m):
        for r in range(l + 1, m):
            gates.append(ControlledPhase(l, r, theta * (1 << (l + r + 1))))
    return Circuit(m, tuple(gates))


def _bit(indices: np.ndarray, qubit: int) -> np.ndarray:
    return (indices >> qubit) & 1


def circuit_to_matrix(circuit: Circuit) -> np.ndarray:
    """Dense 2^width x 2^width unitary, the ordered product of gate matrices.

    Verification path only; width is capped at MAX_DENSE_QUBITS.
    """
    w = circuit.width
    if w > MAX_DENSE_QUBITS:
        raise ValueError(f"dense reconstruction limited to {MAX_DENSE_QUBITS} qubits, got {w}")
    dim = 1 << w
    idx = np.arange(dim)
    u = np.eye(dim, dtype=np.complex128)
    for gate in circuit.gates:
        if isinstance(gate, Hadamard):
            lo = idx[_bit(idx, gate.target) == 0]
            hi = lo | (1 << gate.target)
            top = u[lo, :].copy()
            bot = u[hi, :]
            u[lo, :] = (top + bot) * _INV_SQRT2
            u[hi, :] = (top - bot) * _INV_SQRT2
        elif isinstance(gate, Phase):
            sel = idx[_bit(idx, gate.target) == 1]
            u[sel, :] *= np.exp(1j * gate.angle)
        elif isinstance(gate, ControlledPhase):
            sel = idx[(_bit(idx, gate.control) & _bit(idx, gate.target)) == 1]
            u[sel, :] *= np.exp(1j * gate.angle)
        elif isinstance(gate, Swap):
            ba, bb = _bit(idx, gate.a), _bit(idx, gate.b)
            sigma = idx ^ ((ba ^ bb) * ((1 << gate.a) | (1 << gate.b)))
            u = u[sigma, :]
        elif isinstance(gate, MultiplexedAncillaRotation):
            mask = 1 << gate.ancilla
            lo = idx[(idx & mask) == 0]
            k = (lo & (mask - 1)) | ((lo >> 1) & ~(mask - 1))
            beta = gate.betas[k, None]
            gamma = np.sqrt(np.clip(1.0 - np.abs(beta) ** 2, 0.0, None))
            top = u[lo, :].copy()
            bot = u[lo | mask, :]
            u[lo, :] = beta * top - gamma * bot
            u[lo | mask, :] = gamma * top + np.conj(beta) * bot
        else:
            raise TypeError(f"unknown gate type {type(gate).__name__}")
    return u


@dataclass(frozen=True)
class GateCounts:
    """Gate tally for a circuit.

    total counts every gate record (a multiplexed rotation counts as one
    macro-op); two_level_rotations is its expansion into 2^(width-1)
    two-level rotations, reported separately.
    """

    by_kind: dict
    total: int
    two_qubit: int
    macro_ops: int
    two_level_rotations: int

    @property
    def elementary(self) -> int:
        return self.total - self.macro_ops


def gate_counts(circuit: Circuit) -> GateCounts:
    by_kind: dict[str, int] = {}
    two_qubit = 0
    macro_ops = 0
    for gate in circuit.gates:
        kind = gate_kind(gate)
        by_kind[kind] = by_kind.get(kind, 0) + 1
        if isinstance(gate, (ControlledPhase, Swap)):
            two_qubit += 1
        if isinstance(gate, MultiplexedAncillaRotation):
            macro_ops += 1
    return GateCounts(
        by_kind=by_kind,
        total=len(circuit.gates),
        two_qubit=two_qubit,
        macro_ops=macro_ops,
        two_level_rotations=macro_ops * (1 << (circuit.width - 1)),
    )


def _gate_to_dict(gate: Gate) -> dict:
    if isinstance(gate, Hadamard):
        return {"kind": "hadamard", "target": gate.target}
    if isinstance(gate, Phase):
        return {"kind": "phase", "target": gate.target, "angle": gate.angle}
    if isinstance(gate, ControlledPhase):
        return {"kind": "controlled_phase", "control": gate.control, "target": gate.target, "angle": gate.angle}
    if isinstance(gate, Swap):
        return {"kind": "swap", "a": gate.a, "b": gate.b}
    if isinstance(gate, MultiplexedAncillaRotation):
        return {
            "kind": "multiplexed_ancilla_rotation",
            "ancilla": gate.ancilla,
            "betas": [[float(z.real), float(z.imag)] for z in gate.betas],
        }
    raise TypeError(f"unknown gate type {type(gate).__name__}")


def _gate_from_dict(doc: dict) -> Gate:
    kind = doc["kind"]
    if kind == "hadamard":
        return Hadamard(doc["target"])
    if kind == "phase":
        return Phase(doc["target"], doc["angle"])
    if kind == "controlled_phase":
        return ControlledPhase(doc["control"], doc["target"], doc["angle"])
    if kind == "swap":
        return Swap(doc["a"], doc["b"])
    if kind == "multiplexed_ancilla_rotation":
        betas = np.array([complex(re, im) for re, im in doc["betas"]], dtype=np.complex128)
        return MultiplexedAncillaRotation(betas, doc["ancilla"])
    raise ValueError(f"unknown gate kind {kind!r}")


def circuit_to_json(circuit: Circuit, indent: int | None = None) -> str:
    """Serialize to the documented JSON form: {"width": w, "gates": [...]}."""
    doc = {"width": circuit.width, "gates": [_gate_to_dict(g) for g in circuit.gates]}
    return json.dumps(doc, indent=indent)


def circuit_from_json(text: str) -> Circuit:
    doc = json.loads(text)
    return Circuit(doc["width"], tuple(_gate_from_dict(g) for g in doc["gates"]))
