"""FastAPI app exposing the simulation engine over HTTP.

Run with `votewelfare serve` or `uvicorn votewelfare.service.app:app`.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from . import ops
from .schemas import (
    CultureInfo,
    ManipulateRequest,
    ManipulateResponse,
    RuleInfo,
    SampleRequest,
    SampleResponse,
    SweepRequest,
    SweepResponse,
)

app = FastAPI(
    title="votewelfare",
    version=__version__,
    description="Strategic-voting welfare experiments under scoring rules",
)


@app.exception_handler(ValueError)
async def value_error_handler(_: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.get("/rules", response_model=list[RuleInfo])
def get_rules() -> list[RuleInfo]:
    return ops.list_rules()


@app.get("/cultures", response_model=list[CultureInfo])
def get_cultures() -> list[CultureInfo]:
    return ops.list_cultures()


@app.post("/sample", response_model=SampleResponse)
def post_sample(request: SampleRequest) -> SampleResponse:
    return ops.run_sample(request)


@app.post("/manipulate", response_model=ManipulateResponse)
def post_manipulate(request: ManipulateRequest) -> ManipulateResponse:
    return ops.run_manipulate(request)


@app.post("/sweep", response_model=SweepResponse)
def post_sweep(request: SweepRequest) -> SweepResponse:
    return ops.run_sweep_request(request)
