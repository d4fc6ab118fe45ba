"""Request and response models for the HTTP service.

Tables travel as CSV text (the same layout the CLI reads) so one
payload field carries the whole dataset; structured results come back
as JSON documents identical to the CLI's file outputs.
"""
from __future__ import annotations

from pydantic import BaseModel, Field


class ThresholdsIn(BaseModel):
    t_strong: float = 0.8
    t_weak: float = 0.4
    t_nmi: float = 0.3


class TableRequest(BaseModel):
    csv: str = Field(description="table text, first column = time labels")
    roles: dict[str, str] = Field(default_factory=dict,
                                  description="variable -> input|output|internal")
    thresholds: ThresholdsIn = Field(default_factory=ThresholdsIn)


class FeaturesOut(BaseModel):
    n_links: int
    n_strong: int
    n_weak: int
    density: float
    hubs: list[str]
    inactive: list[str]


class AnalyzeResponse(BaseModel):
    map: dict
    features: FeaturesOut
    dot: str
    dsm_csv: str


class WindowsRequest(TableRequest):
    window: int
    stride: int = 1


class WindowOut(BaseModel):
    index: int
    start: int
    size: int
    start_label: str
    features: FeaturesOut
    map: dict


class AlarmOut(BaseModel):
    window_index: int
    reason: str


class WindowsResponse(BaseModel):
    windows: list[WindowOut]
    alarms: list[AlarmOut]


class ScatterRequest(TableRequest):
    var_x: str
    var_y: str


class RelationOut(BaseModel):
    var_a: str
    var_b: str
    n_used: int
    pearson_r: float
    spearman_rho: float
    nmi: float
    bins: int
    rel_class: str


class PointOut(BaseModel):
    x: float
    y: float
    label: str


class ScatterResponse(BaseModel):
    relation: RelationOut
    points: list[PointOut]
    svg: str


class RulesRequest(BaseModel):
    csv: str
    antecedents: list[str]
    consequent: str
    k: int = 3


class RulesResponse(BaseModel):
    text: str
    doc: dict


class FcmRunRequest(BaseModel):
    model: dict = Field(description="model document, same shape as the CLI file")
    initial: list[float]
    iters: int = 1000
    eps: float = 1e-6


class FcmRunResponse(BaseModel):
    verdict: str
    steps: int
    final: list[float]
    trajectory: list[list[float]]


class HealthResponse(BaseModel):
    status: str
