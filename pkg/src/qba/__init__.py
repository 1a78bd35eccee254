"""Exact N-point quantum Fourier transforms for arbitrary N.

The transform is reduced to a chirp, a power-of-two QFT, a block-encoded
Fourier-domain convolution with ancilla post-selection, an inverse QFT, and
a de-chirp, all executed on a dense state-vector simulator. A classical
stack (direct DFT, radix-2 FFT, chirp-z transform) provides the oracles.
"""

from .circuits import (
    Circuit,
    ControlledPhase,
    Gate,
    GateCounts,
    Hadamard,
    MultiplexedAncillaRotation,
    Phase,
    Swap,
    circuit_from_json,
    circuit_to_json,
    circuit_to_matrix,
    gate_counts,
    qft_circuit,
    quadratic_phase_circuit,
)
from .numerics import (
    as_complex_vector,
    bluestein_classical,
    chirp_phases,
    convolve_circular,
    dft_direct,
    fft_radix2,
    relative_l2_error,
    workspace_qubits,
    wrapped_chirp_kernel,
)
from .pipeline import (
    BluesteinPlan,
    QBAResult,
    VerifyReport,
    VerifyRow,
    build_plan,
    qba_circuit,
    run_qba,
    run_qba_dense,
    verify_range,
)
from .simulator import (
    StateVector,
    apply_circuit,
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

__version__ = "0.1.0"

__all__ = [
    "BluesteinPlan",
    "Circuit",
    "ControlledPhase",
    "Gate",
    "GateCounts",
    "Hadamard",
    "MultiplexedAncillaRotation",
    "Phase",
    "QBAResult",
    "StateVector",
    "Swap",
    "VerifyReport",
    "VerifyRow",
    "apply_circuit",
    "apply_diagonal",
    "apply_gate",
    "apply_multiplexed_ancilla_rotation",
    "as_complex_vector",
    "bluestein_classical",
    "build_plan",
    "chirp_phases",
    "circuit_from_json",
    "circuit_to_json",
    "circuit_to_matrix",
    "convolve_circular",
    "dft_direct",
    "fft_radix2",
    "gate_counts",
    "init_amplitudes",
    "init_basis",
    "postselect",
    "probabilities",
    "qba_circuit",
    "qft_circuit",
    "quadratic_phase_circuit",
    "relative_l2_error",
    "run_qba",
    "run_qba_dense",
    "sample",
    "sample_counts",
    "verify_range",
    "workspace_qubits",
    "wrapped_chirp_kernel",
]
