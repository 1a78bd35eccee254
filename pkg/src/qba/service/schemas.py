"""Request/response models shared by the HTTP endpoints and the CLI.

Complex amplitudes travel as [re, im] pairs. The transform response keys
(n, m, M, alpha, success_probability, y, reference, max_abs_error) are the
stable machine-readable contract, identical on stdout and over HTTP.
"""

from __future__ import annotations

from pydantic import BaseModel, Field

ComplexPair = tuple[float, float]


class TransformRequest(BaseModel):
    """Input is either an explicit vector x or a basis state (n, basis)."""

    n: int | None = Field(default=None, ge=1)
    basis: int | None = Field(default=None, ge=0)
    x: list[ComplexPair] | None = None


class TransformResponse(BaseModel):
    n: int
    m: int
    M: int
    alpha: float
    success_probability: float
    y: list[ComplexPair]
    reference: list[ComplexPair]
    max_abs_error: float


class VerifyRequest(BaseModel):
    n_min: int = Field(ge=1)
    n_max: int = Field(ge=1)
    trials: int = Field(default=5, ge=1)
    seed: int = 0


class VerifyRowModel(BaseModel):
    n: int
    m: int
    M: int
    alpha: float
    trials: int
    max_rel_error: float
    mean_rel_error: float
    max_mass_dev: float


class VerifyResponse(BaseModel):
    rows: list[VerifyRowModel]
    max_rel_error: float


class StatsRequest(BaseModel):
    sizes: list[int]
    fit: bool = False


class StatsRow(BaseModel):
    n: int
    m: int
    M: int
    diagonal_gates: int
    qft_gates: int
    swap_gates: int
    total: int
    macro_ops: int


class ScalingFit(BaseModel):
    """Least-squares fit of the elementary gate total against a quadratic in m."""

    quadratic_coeff: float
    linear_coeff: float
    constant: float
    max_residual: float


class StatsResponse(BaseModel):
    rows: list[StatsRow]
    fit: ScalingFit | None = None


class BenchRequest(BaseModel):
    sizes: list[int]
    repeats: int = Field(default=3, ge=1)
    seed: int = 0


class BenchRow(BaseModel):
    N: int
    method: str
    seconds: float


class BenchResponse(BaseModel):
    rows: list[BenchRow]


class SampleRequest(BaseModel):
    n: int | None = Field(default=None, ge=1)
    basis: int | None = Field(default=None, ge=0)
    x: list[ComplexPair] | None = None
    shots: int = Field(ge=1)
    seed: int = 0


class SampleRow(BaseModel):
    index: int
    count: int
    probability: float


class SampleResponse(BaseModel):
    n: int
    shots: int
    seed: int
    rows: list[SampleRow]
