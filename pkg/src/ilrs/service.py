"""HTTP front end: bounds, simulations and the self-test.

Run with ``uvicorn ilrs.service:app``.
"""
from __future__ import annotations

from dataclasses import asdict

from fastapi import FastAPI, HTTPException

from . import selftest
from .schemas import (BoundRow, BoundsRequest, BoundsResponse, CheckResult, ExperimentRequest,
                      ExperimentResponse, SelftestResponse)
from .sim import ConfigError, RadiusExceeded, bound_table, run_experiment

app = FastAPI(title="ilrs", version="0.1.0")


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/bounds", response_model=BoundsResponse)
def bounds(req: BoundsRequest) -> BoundsResponse:
    try:
        rows = bound_table(req.q, req.m, req.partition, req.k, req.s, req.taus)
    except RadiusExceeded as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return BoundsResponse(rows=[BoundRow(**r) for r in rows])


@app.post("/simulate", response_model=ExperimentResponse)
def simulate(req: ExperimentRequest) -> ExperimentResponse:
    try:
        cfg = req.to_config()
    except ConfigError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return ExperimentResponse(**run_experiment(cfg).to_dict())


@app.get("/selftest", response_model=SelftestResponse)
def run_selftest(trials: int = 10) -> SelftestResponse:
    checks = [CheckResult(**asdict(c)) for c in selftest.run_all(trials)]
    return SelftestResponse(ok=all(c.ok for c in checks), checks=checks)
