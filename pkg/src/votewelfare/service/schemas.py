"""Request/response models for the HTTP service (and the CLI, its first client)."""

from __future__ import annotations

from pydantic import BaseModel, Field


class RuleInfo(BaseModel):
    name: str
    family: str


class CultureInfo(BaseModel):
    name: str
    kind: str


class SampleRequest(BaseModel):
    culture: str = "ic"
    m: int | None = None  # None: use the culture's data-pinned candidate count
    n: int = 10
    count: int = 1
    seed: int = Field(default=0, ge=0)
    sigma: list[int] | None = None
    bag_file: str | None = None
    mixture_file: str | None = None


class SampleResponse(BaseModel):
    profiles: list[list[list[int]]]
    text: str


class ManipulateRequest(BaseModel):
    ballots: list[list[int]]
    rule: str
    voter: int = 0


class WelfareOut(BaseModel):
    borda: float
    rawls: float
    nash: float


class ManipulateResponse(BaseModel):
    sincere_winner: int
    achievable: list[int]
    ballot: list[int]
    winner: int
    improved: bool
    welfare_sincere: WelfareOut
    welfare_manipulated: WelfareOut


class SweepRequest(BaseModel):
    culture: str
    rules: list[str] | None = None  # None: the full 15-rule roster
    behaviours: list[str] = ["sincere", "manipulator"]
    n_values: list[int] = [10]
    m_values: list[int] | None = None  # None: the culture's data-pinned m
    trials: int = Field(default=10_000, ge=1)
    seed: int = Field(default=0, ge=0)
    bag_file: str | None = None
    mixture_file: str | None = None


class RecordModel(BaseModel):
    culture: str
    rule: str
    behaviour: str
    measure: str
    n: int
    m: int
    mean: float
    stderr: float
    trials: int
    seed: int


class SweepResponse(BaseModel):
    records: list[RecordModel]
    csv: str
