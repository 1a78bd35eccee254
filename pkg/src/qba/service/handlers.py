"""Request handlers behind the HTTP endpoints and the CLI subcommands.

Domain failures raise ValueError; the HTTP layer maps them to 400 and the
CLI to exit code 1. Plans are cached per transform length, which is what
makes a long-running service worthwhile: repeated requests for the same n
skip the kernel FFT precomputation.
"""

from __future__ import annotations

import time
from functools import lru_cache

import numpy as np

from ..circuits import gate_counts, qft_circuit, quadratic_phase_circuit
from ..numerics import bluestein_classical, dft_direct
from ..pipeline import BluesteinPlan, build_plan, run_qba, verify_range
from ..simulator import sample_counts
from .schemas import (
    BenchRequest,
    BenchResponse,
    BenchRow,
    ComplexPair,
    SampleRequest,
    SampleResponse,
    SampleRow,
    ScalingFit,
    StatsRequest,
    StatsResponse,
    StatsRow,
    TransformRequest,
    TransformResponse,
    VerifyRequest,
    VerifyResponse,
    VerifyRowModel,
)


@lru_cache(maxsize=64)
def get_plan(n: int) -> BluesteinPlan:
    return build_plan(n)


def _to_pairs(values: np.ndarray) -> list[ComplexPair]:
    return [(float(z.real), float(z.imag)) for z in values]


def _from_pairs(pairs: list[ComplexPair]) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)


def _resolve_input(n: int | None, basis: int | None, x: list[ComplexPair] | None) -> np.ndarray:
    if x is not None:
        vec = _from_pairs(x)
        if vec.size == 0:
            raise ValueError("input vector must be nonempty")
        if n is not None and n != vec.size:
            raise ValueError(f"dimension mismatch: n={n} but vector has length {vec.size}")
        return vec
    if n is None:
        raise ValueError("either an input vector or a transform length n is required")
    if basis is None:
        raise ValueError("basis index is required when no input vector is given")
    if not 0 <= basis < n:
        raise ValueError(f"basis index {basis} out of range for n={n}")
    vec = np.zeros(n, dtype=np.complex128)
    vec[basis] = 1.0
    return vec


def transform(request: TransformRequest) -> TransformResponse:
    x = _resolve_input(request.n, request.basis, request.x)
    plan = get_plan(x.size)
    result = run_qba(x, plan)
    reference = dft_direct(x)
    return TransformResponse(
        n=plan.n,
        m=plan.m,
        M=plan.big_m,
        alpha=plan.alpha,
        success_probability=result.success_probability,
        y=_to_pairs(result.y),
        reference=_to_pairs(reference),
        max_abs_error=float(np.max(np.abs(result.y - reference))),
    )


def verify(request: VerifyRequest) -> VerifyResponse:
    report = verify_range(request.n_min, request.n_max, request.trials, request.seed)
    rows = [
        VerifyRowModel(
            n=r.n,
            m=r.m,
            M=r.big_m,
            alpha=r.alpha,
            trials=r.trials,
            max_rel_error=r.max_rel_error,
            mean_rel_error=r.mean_rel_error,
            max_mass_dev=r.max_mass_dev,
        )
        for r in report.rows
    ]
    return VerifyResponse(rows=rows, max_rel_error=report.max_rel_error)


def _stats_row(n: int) -> StatsRow:
    plan = get_plan(n)
    m = plan.m
    diagonal = gate_counts(quadratic_phase_circuit(m, -np.pi / n))
    qft = gate_counts(qft_circuit(m))
    return StatsRow(
        n=n,
        m=m,
        M=plan.big_m,
        diagonal_gates=2 * diagonal.total,
        qft_gates=2 * qft.total,
        swap_gates=2 * qft.by_kind.get("swap", 0),
        total=2 * diagonal.total + 2 * qft.total,
        macro_ops=1,
    )


def fit_total_vs_quadratic(ms: list[int], totals: list[int]) -> ScalingFit:
    """Least-squares fit total ~ a*m^2 + b*m + c; a is the quadratic weight."""
    if len(ms) < 3:
        raise ValueError("need at least 3 points to fit a quadratic")
    m_arr = np.asarray(ms, dtype=np.float64)
    t_arr = np.asarray(totals, dtype=np.float64)
    basis = np.vstack([m_arr**2, m_arr, np.ones_like(m_arr)]).T
    coeffs, *_ = np.linalg.lstsq(basis, t_arr, rcond=None)
    residual = float(np.max(np.abs(basis @ coeffs - t_arr)))
    return ScalingFit(
        quadratic_coeff=float(coeffs[0]),
        linear_coeff=float(coeffs[1]),
        constant=float(coeffs[2]),
        max_residual=residual,
    )


def stats(request: StatsRequest) -> StatsResponse:
    if not request.sizes:
        raise ValueError("at least one transform length is required")
    if any(n < 1 for n in request.sizes):
        raise ValueError("transform lengths must be >= 1")
    rows = [_stats_row(n) for n in request.sizes]
    fit = None
    if request.fit:
        fit = fit_total_vs_quadratic([r.m for r in rows], [r.total for r in rows])
    return StatsResponse(rows=rows, fit=fit)


def bench(request: BenchRequest) -> BenchResponse:
    if not request.sizes:
        raise ValueError("at least one size is required")
    if any(n < 1 for n in request.sizes):
        raise ValueError("sizes must be >= 1")
    rows: list[BenchRow] = []
    for n in request.sizes:
        rng = np.random.default_rng(np.random.SeedSequence([request.seed, n]))
        x = rng.normal(size=n) + 1j * rng.normal(size=n)
        for name, fn in (("dft_direct", dft_direct), ("bluestein_classical", bluestein_classical)):
            best = min(_time_once(fn, x) for _ in range(request.repeats))
            rows.append(BenchRow(N=n, method=name, seconds=best))
    return BenchResponse(rows=rows)


def _time_once(fn, x) -> float:
    start = time.perf_counter()
    fn(x)
    return time.perf_counter() - start


def sample_histogram(request: SampleRequest) -> SampleResponse:
    x = _resolve_input(request.n, request.basis, request.x)
    plan = get_plan(x.size)
    result = run_qba(x, plan)
    counts = sample_counts(result.logical_probabilities, request.shots, request.seed)
    rows = [
        SampleRow(index=i, count=int(c), probability=float(p))
        for i, (c, p) in enumerate(zip(counts, result.logical_probabilities))
    ]
    return SampleResponse(n=plan.n, shots=request.shots, seed=request.seed, rows=rows)
