"""Arbitrary-size quantum Fourier transform via the Bluestein reduction.

A BluesteinPlan precomputes everything one transform length needs: the
power-of-two workspace M = 2^m >= 2n-1, the wrapped chirp kernel b, its
forward DFT b~, and the normalization alpha = max_k |b~_k| that makes the
convolution diagonal sub-normalized.

run_qba executes on m+1 qubits (main register = qubits 0..m-1, ancilla =
qubit m): load the input, chirp, forward QFT, multiplexed ancilla rotation
with beta_k = b~_k/alpha, inverse QFT, de-chirp, then post-select ancilla=0.
The unnormalized post-selected amplitude at index k < n is y_k/(alpha*||x||)
with y the unnormalized DFT of x; the result rescales by alpha*||x|| so it
compares directly against dft_direct.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .circuits import (
    Circuit,
    GateCounts,
    MultiplexedAncillaRotation,
    circuit_to_matrix,
    gate_counts,
    qft_circuit,
    quadratic_phase_circuit,
)
from .numerics import (
    as_complex_vector,
    chirp_phases,
    dft_direct,
    fft_radix2,
    relative_l2_error,
    workspace_qubits,
    wrapped_chirp_kernel,
)
from .simulator import StateVector, apply_circuit, apply_diagonal, init_amplitudes, postselect

MAX_DENSE_PLAN_QUBITS = 10


@dataclass(frozen=True)
class BluesteinPlan:
    """Precomputed data for one transform length n."""

    n: int
    m: int
    big_m: int
    kernel_b: np.ndarray
    fourier_b: np.ndarray
    alpha: float


@dataclass
class QBAResult:
    """Post-selected output of one run.

    y is rescaled by alpha*||x|| so it equals the unnormalized classical DFT;
    postselected_amplitudes is the raw (unnormalized) ancilla-0 branch over
    all M workspace indices, garbage included. logical_probabilities are the
    measurement probabilities conditioned on landing in the logical subspace
    [0, n). max_abs_error_vs_oracle is filled only when verification was
    requested.
    """

    n: int
    m: int
    big_m: int
    alpha: float
    input_norm: float
    y: np.ndarray
    success_probability: float
    logical_mass: float
    logical_probabilities: np.ndarray
    postselected_amplitudes: np.ndarray
    gate_report: GateCounts
    max_abs_error_vs_oracle: float | None = None

    @property
    def normalized_logical_amplitudes(self) -> np.ndarray:
        return self.y / np.linalg.norm(self.y)


def build_plan(n: int) -> BluesteinPlan:
    """Plan for an n-point transform: minimal m with 2^m >= 2n-1 (m >= 1)."""
    if n < 1:
        raise ValueError("transform length must be >= 1")
    m = workspace_qubits(n)
    big_m = 1 << m
    kernel = wrapped_chirp_kernel(n, big_m)
    fourier = fft_radix2(kernel)
    alpha = float(np.max(np.abs(fourier)))
    kernel.flags.writeable = False  # plans are shared across threads
    fourier.flags.writeable = False
    return BluesteinPlan(n=n, m=m, big_m=big_m, kernel_b=kernel, fourier_b=fourier, alpha=alpha)


def qba_circuit(plan: BluesteinPlan) -> Circuit:
    """Full gate list on m+1 qubits: chirp, QFT, multiplexed rotation, inverse
    QFT, de-chirp. The two chirp diagonals share the angle -pi/n."""
    m = plan.m
    theta = -math.pi / plan.n
    chirp = quadratic_phase_circuit(m, theta)
    gates = []
    gates.extend(chirp.gates)
    gates.extend(qft_circuit(m).gates)
    gates.append(MultiplexedAncillaRotation(plan.fourier_b / plan.alpha, ancilla=m))
    gates.extend(qft_circuit(m, inverse=True).gates)
    gates.extend(chirp.gates)
    return Circuit(m + 1, tuple(gates))


def _assemble_result(
    plan: BluesteinPlan,
    final: StateVector,
    input_norm: float,
    report: GateCounts,
    verify_against: np.ndarray | None,
) -> QBAResult:
    n = plan.n
    branch, prob = postselect(final, qubit=plan.m, outcome=0, normalize=False)
    raw = branch.amplitudes
    y = plan.alpha * input_norm * raw[:n]
    logical_mass = float(np.sum(np.abs(raw[:n]) ** 2))
    logical_probs = np.abs(raw[:n]) ** 2 / logical_mass
    max_err = None
    if verify_against is not None:
        max_err = float(np.max(np.abs(y - verify_against)))
    return QBAResult(
        n=n,
        m=plan.m,
        big_m=plan.big_m,
        alpha=plan.alpha,
        input_norm=input_norm,
        y=y,
        success_probability=prob,
        logical_mass=logical_mass,
        logical_probabilities=logical_probs,
        postselected_amplitudes=raw,
        gate_report=report,
        max_abs_error_vs_oracle=max_err,
    )


def _check_input(x, plan: BluesteinPlan) -> np.ndarray:
    x = as_complex_vector(x)
    if x.size != plan.n:
        raise ValueError(f"input length {x.size} != plan length {plan.n}")
    return x


def run_qba(
    x,
    plan: BluesteinPlan,
    *,
    diagonal_mode: str = "gates",
    verify: bool = False,
) -> QBAResult:
    """Execute the pipeline gate-by-gate on the simulator.

    diagonal_mode selects how the chirp/de-chirp diagonals are realized:
    "gates" (default) applies the synthesized quadratic-phase circuits,
    "direct" multiplies the precomputed diagonal onto the state, as a
    cross-check path. verify=True also runs the classical oracle and fills
    max_abs_error_vs_oracle.
    """
    x = _check_input(x, plan)
    m, n = plan.m, plan.n
    state, input_norm = init_amplitudes(m + 1, x)
    circuit = qba_circuit(plan)
    report = gate_counts(circuit)
    if diagonal_mode == "gates":
        apply_circuit(state, circuit)
    elif diagonal_mode == "direct":
        # Same five steps, with both chirps applied as explicit diagonals over
        # the full m+1 qubit space (the ancilla bit leaves them unchanged).
        chirp = np.tile(chirp_phases(n, plan.big_m, sign=-1), 2)
        apply_diagonal(state, chirp)
        apply_circuit(state, qft_circuit(m))
        apply_circuit(
            state,
            Circuit(m + 1, (MultiplexedAncillaRotation(plan.fourier_b / plan.alpha, ancilla=m),)),
        )
        apply_circuit(state, qft_circuit(m, inverse=True))
        apply_diagonal(state, chirp)
    else:
        raise ValueError(f"unknown diagonal_mode {diagonal_mode!r}")
    oracle = dft_direct(x) if verify else None
    return _assemble_result(plan, state, input_norm, report, oracle)


def run_qba_dense(x, plan: BluesteinPlan, *, verify: bool = False) -> QBAResult:
    """Cross-check path: multiply the dense matrices of the five stages.

    Independent of the gate-by-gate simulator; both paths must agree.
    """
    if plan.m > MAX_DENSE_PLAN_QUBITS:
        raise ValueError(f"dense execution limited to m <= {MAX_DENSE_PLAN_QUBITS}, got m={plan.m}")
    x = _check_input(x, plan)
    m = plan.m
    w = m + 1

    def widen(c: Circuit) -> np.ndarray:
        # Re-host the main-register circuit on m+1 qubits (ancilla untouched).
        return circuit_to_matrix(Circuit(w, c.gates))

    # Chirp and de-chirp use the same angle -pi/n, hence the same matrix.
    u_chirp = widen(quadratic_phase_circuit(m, -math.pi / plan.n))
    u_qft = widen(qft_circuit(m))
    u_conv = circuit_to_matrix(
        Circuit(w, (MultiplexedAncillaRotation(plan.fourier_b / plan.alpha, ancilla=m),))
    )
    u_iqft = widen(qft_circuit(m, inverse=True))
    u_total = u_chirp @ u_iqft @ u_conv @ u_qft @ u_chirp
    state, input_norm = init_amplitudes(w, x)
    state.amplitudes = u_total @ state.amplitudes
    report = gate_counts(qba_circuit(plan))
    oracle = dft_direct(x) if verify else None
    return _assemble_result(plan, state, input_norm, report, oracle)


@dataclass(frozen=True)
class VerifyRow:
    n: int
    m: int
    big_m: int
    alpha: float
    trials: int
    max_rel_error: float
    mean_rel_error: float
    max_mass_dev: float


@dataclass(frozen=True)
class VerifyReport:
    rows: tuple[VerifyRow, ...] = field(default_factory=tuple)

    @property
    def max_rel_error(self) -> float:
        return max(r.max_rel_error for r in self.rows)


def _random_unit_vector(n: int, seed_seq: np.random.SeedSequence) -> np.ndarray:
    rng = np.random.default_rng(seed_seq)
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def _verify_one(n: int, trials: int, seed_seq: np.random.SeedSequence) -> VerifyRow:
    plan = build_plan(n)
    errors = []
    mass_devs = []
    for child in seed_seq.spawn(trials):
        x = _random_unit_vector(n, child)
        result = run_qba(x, plan)
        errors.append(relative_l2_error(result.y, dft_direct(x)))
        # Parseval: for unit-norm input the logical-subspace mass is n/alpha^2.
        mass_devs.append(abs(result.logical_mass - n / plan.alpha**2))
    return VerifyRow(
        n=n,
        m=plan.m,
        big_m=plan.big_m,
        alpha=plan.alpha,
        trials=trials,
        max_rel_error=max(errors),
        mean_rel_error=sum(errors) / len(errors),
        max_mass_dev=max(mass_devs),
    )


def verify_range(
    n_min: int,
    n_max: int,
    trials: int = 5,
    seed: int = 0,
    workers: int | None = None,
) -> VerifyReport:
    """Compare run_qba against dft_direct on random unit-norm inputs.

    Per-trial seeds are spawned from a single 64-bit seed, so the report is
    identical no matter how many workers run it. workers=None reads the
    QBA_THREADS environment variable (default 1).
    """
    if not 1 <= n_min <= n_max:
        raise ValueError(f"need 1 <= n_min <= n_max, got [{n_min}, {n_max}]")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers is None:
        workers = max(1, int(os.environ.get("QBA_THREADS", "1")))
    sizes = list(range(n_min, n_max + 1))
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_verify_one, sizes, [trials] * len(sizes), seqs))
    else:
        rows = [_verify_one(n, trials, sq) for n, sq in zip(sizes, seqs)]
    return VerifyReport(rows=tuple(rows))
