"""Request and response models shared by the HTTP service and the CLI."""
from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from .sim import ConfigError, ExperimentConfig


class CodeParams(BaseModel):
    q: int = Field(3, ge=2)
    m: int = Field(4, ge=1)
    u: int = 1
    partition: list[int] = Field(default_factory=lambda: [4, 4], min_length=1)
    k: int = Field(3, ge=1)


class BoundsRequest(CodeParams):
    s: int = Field(4, ge=1)
    taus: Optional[list[int]] = None


class BoundRow(BaseModel):
    s: int
    tau: int
    tau_max: float
    bound_std: float
    bound_impr: float


class BoundsResponse(BaseModel):
    rows: list[BoundRow]


class ExperimentRequest(CodeParams):
    mode: Literal["vilrs", "hilrs"] = "vilrs"
    s: int = Field(4, ge=1)
    tau: Optional[int] = Field(None, ge=0)
    tf: int = Field(0, ge=0)
    tr: int = Field(0, ge=0)
    tc: int = Field(0, ge=0)
    trials: Optional[int] = Field(None, ge=0)
    failures: Optional[int] = Field(None, ge=0)
    max_trials: int = Field(1_000_000, ge=1)
    max_seconds: Optional[float] = Field(None, gt=0)
    seed: int = Field(0, ge=0)
    workers: int = Field(1, ge=1)
    resample_code: bool = True
    allow_beyond_radius: bool = False

    def to_config(self) -> ExperimentConfig:
        d = self.model_dump()
        d["partition"] = tuple(d["partition"])
        return ExperimentConfig(**d).validate()


class ExperimentResponse(BaseModel):
    config: dict
    trials: int
    failures: int
    miscorrections: int
    rate: float
    ci_lo: float
    ci_hi: float
    bound_std: Optional[float]
    bound_impr: Optional[float]
    seed: int
    runtime_s: float
    stop: str
    ci_hi_below_bound: Optional[bool] = None
    bound_violation: Optional[bool] = None
    outcomes: dict = Field(default_factory=dict)


class CheckResult(BaseModel):
    name: str
    ok: bool
    detail: str = ""


class SelftestResponse(BaseModel):
    ok: bool
    checks: list[CheckResult]


__all__ = ["BoundsRequest", "BoundRow", "BoundsResponse", "CheckResult", "ConfigError",
           "ExperimentRequest", "ExperimentResponse", "SelftestResponse"]
