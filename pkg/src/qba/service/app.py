"""FastAPI app exposing the transform service.

Run with e.g. `uvicorn qba.service.app:app` or `qba serve`.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from . import handlers
from .schemas import (
    BenchRequest,
    BenchResponse,
    SampleRequest,
    SampleResponse,
    StatsRequest,
    StatsResponse,
    TransformRequest,
    TransformResponse,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(
    title="qba",
    description="Exact N-point discrete Fourier transforms for arbitrary N on a "
    "simulated quantum register, with classical oracles for verification.",
    version=__version__,
)


def _run(handler, request):
    try:
        return handler(request)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/")
def root() -> dict:
    return {"name": "qba", "version": __version__}


@app.post("/transform", response_model=TransformResponse)
def transform(request: TransformRequest) -> TransformResponse:
    return _run(handlers.transform, request)


@app.post("/verify", response_model=VerifyResponse)
def verify(request: VerifyRequest) -> VerifyResponse:
    return _run(handlers.verify, request)


@app.post("/stats", response_model=StatsResponse)
def stats(request: StatsRequest) -> StatsResponse:
    return _run(handlers.stats, request)


@app.post("/bench", response_model=BenchResponse)
def bench(request: BenchRequest) -> BenchResponse:
    return _run(handlers.bench, request)


@app.post("/sample", response_model=SampleResponse)
def sample(request: SampleRequest) -> SampleResponse:
    return _run(handlers.sample_histogram, request)
