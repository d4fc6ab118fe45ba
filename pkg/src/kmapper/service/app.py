"""HTTP face of the package: every endpoint wraps one core pipeline.

Domain errors surface as 400 with the error class name, so clients can
branch on the same identifiers the CLI prints.
"""
from __future__ import annotations

import json

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..analysis import static_analysis, time_domain_analysis
from ..dataset import Role, TimeSeriesTable, WindowSpec, load_table
from ..errors import KmapperError
from ..fcm import model_from_doc, run
from ..fuzzy import build_partitions, induce_rules, rules_json, rules_text
from ..kmap import dsm_csv, export_dot, map_doc
from ..relation import RelationThresholds, classify_relation, scatter_points, scatter_svg
from .schemas import (
    AlarmOut,
    AnalyzeResponse,
    FcmRunRequest,
    FcmRunResponse,
    FeaturesOut,
    HealthResponse,
    PointOut,
    RelationOut,
    RulesRequest,
    RulesResponse,
    ScatterRequest,
    ScatterResponse,
    TableRequest,
    ThresholdsIn,
    WindowOut,
    WindowsRequest,
    WindowsResponse,
)

app = FastAPI(title="kmapper", version=__version__)


@app.exception_handler(KmapperError)
async def kmapper_error(request: Request, exc: KmapperError) -> JSONResponse:
    return JSONResponse(status_code=400,
                        content={"error": type(exc).__name__, "detail": str(exc)})


@app.exception_handler(ValueError)
async def value_error(request: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(status_code=400,
                        content={"error": type(exc).__name__, "detail": str(exc)})


def _table_of(req: TableRequest) -> TimeSeriesTable:
    table = load_table(req.csv)
    if req.roles:
        return table.with_roles({name: Role(v) for name, v in req.roles.items()})
    return table


def _thresholds_of(t: ThresholdsIn) -> RelationThresholds:
    return RelationThresholds(t.t_strong, t.t_weak, t.t_nmi)


def _features_out(features) -> FeaturesOut:
    return FeaturesOut(
        n_links=features.n_links,
        n_strong=features.n_strong,
        n_weak=features.n_weak,
        density=features.density,
        hubs=sorted(features.hub_set),
        inactive=sorted(features.inactive_set),
    )


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok")


@app.post("/analyze", response_model=AnalyzeResponse)
def analyze(req: TableRequest) -> AnalyzeResponse:
    table = _table_of(req)
    kmap, features = static_analysis(table, _thresholds_of(req.thresholds))
    return AnalyzeResponse(
        map=map_doc(kmap),
        features=_features_out(features),
        dot=export_dot(kmap),
        dsm_csv=dsm_csv(kmap),
    )


@app.post("/windows", response_model=WindowsResponse)
def windows(req: WindowsRequest) -> WindowsResponse:
    table = _table_of(req)
    timeline = time_domain_analysis(table, WindowSpec(req.window, req.stride),
                                    _thresholds_of(req.thresholds))
    return WindowsResponse(
        windows=[
            WindowOut(index=i, start=w.start, size=w.size,
                      start_label=w.start_label,
                      features=_features_out(w.features),
                      map=map_doc(w.kmap))
            for i, w in enumerate(timeline.windows)
        ],
        alarms=[AlarmOut(window_index=a.window_index, reason=a.reason)
                for a in timeline.alarms],
    )


@app.post("/scatter", response_model=ScatterResponse)
def scatter(req: ScatterRequest) -> ScatterResponse:
    table = _table_of(req)
    rel = classify_relation(table.column(req.var_x), table.column(req.var_y),
                            _thresholds_of(req.thresholds), req.var_x, req.var_y)
    points = scatter_points(table, req.var_x, req.var_y)
    return ScatterResponse(
        relation=RelationOut(
            var_a=rel.var_a, var_b=rel.var_b, n_used=rel.n_used,
            pearson_r=rel.pearson_r, spearman_rho=rel.spearman_rho,
            nmi=rel.nmi, bins=rel.bins, rel_class=rel.rel_class.value,
        ),
        points=[PointOut(x=p.x, y=p.y, label=p.label) for p in points],
        svg=scatter_svg(points, req.var_x, req.var_y),
    )


@app.post("/rules", response_model=RulesResponse)
def rules(req: RulesRequest) -> RulesResponse:
    table = load_table(req.csv)
    partitions = {
        name: build_partitions(table, name, req.k)
        for name in dict.fromkeys([*req.antecedents, req.consequent])
    }
    rb = induce_rules(table, partitions, req.antecedents, req.consequent)
    return RulesResponse(text=rules_text(rb), doc=json.loads(rules_json(rb)))


@app.post("/fcm/run", response_model=FcmRunResponse)
def fcm_run(req: FcmRunRequest) -> FcmRunResponse:
    model = model_from_doc(req.model)
    result = run(model, req.initial, max_iters=req.iters, eps=req.eps)
    return FcmRunResponse(
        verdict=result.verdict.value,
        steps=len(result.trajectory) - 1,
        final=[float(v) for v in result.final],
        trajectory=[[float(v) for v in s] for s in result.trajectory],
    )
