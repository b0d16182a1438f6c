"""Stateless HTTP service wrapping the parsing, modeling and metrics engines.

Every request is an independent pure computation; identical request bodies
produce byte-identical responses.
"""
from __future__ import annotations

from typing import Any, Optional

import numpy as np
from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import metrics
from .compare import DesignTaskError, compare_designs, comparison_to_dict
from .engine import TaskValidationError, model_task
from .model import (
    KEYSTROKE_SECONDS,
    FittsCoefficients,
    MentalPlacementRule,
    OperatorTable,
    StrategyKind,
    TypingSkill,
    validate_task,
)
from .parser import LayoutConfig, apply_layout_overrides, estimate_layout, overrides_from_dict, parse_document
from .serialize import (
    FetchError,
    TaskFormatError,
    document_from_dict,
    document_to_dict,
    fetch_url,
    fitts_from_dict,
    operator_table_from_dict,
    profile_from_dict,
    result_to_dict,
    strategy_from_dict,
    task_from_dict,
)

app = FastAPI(title="formtime", version="0.1.0")


def _error(status: int, code: str, message: str, violations: Optional[list] = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "violations": violations or []},
    )


def _bad_request(code: str, message: str, violations: Optional[list] = None) -> JSONResponse:
    return _error(400, code, message, violations)


class ParseRequest(BaseModel):
    html: Optional[str] = None
    url: Optional[str] = None
    layout_config: Optional[dict] = None
    overrides: Optional[dict] = None
    timeout: float = 10.0
    offline: bool = False


class ModelRequest(BaseModel):
    document: dict
    task: dict
    profile: Optional[dict] = None
    strategy: Optional[Any] = None
    operator_table: Optional[dict] = None
    fitts: Optional[Any] = None
    mental_rule: str = MentalPlacementRule.ONCE_PER_ELEMENT.value
    shifted_keys_double: bool = False


class CompareDesign(BaseModel):
    label: str
    document: dict


class CompareRequest(BaseModel):
    designs: list[CompareDesign]
    task: dict
    settings: dict = Field(default_factory=dict)


class SusRequest(BaseModel):
    responses: list  # one response list, or a list of them


class AlphaRequest(BaseModel):
    responses: list[list[int]]
    scale_min: int = 1
    scale_max: int = 5


class GainRequest(BaseModel):
    pre: float
    post: float
    max_score: float = Field(alias="max")
    model_config = {"populate_by_name": True}


def _build_settings(payload: dict) -> dict:
    profile = profile_from_dict(payload.get("profile"))
    return {
        "profile": profile,
        "strategy": strategy_from_dict(payload.get("strategy")),
        "table": operator_table_from_dict(payload.get("operator_table"), profile.typing_skill),
        "rule": MentalPlacementRule(payload.get("mental_rule", "per-element")),
        "fitts": fitts_from_dict(payload.get("fitts")),
    }


@app.post("/api/parse")
def api_parse(request: ParseRequest):
    if (request.html is None) == (request.url is None):
        return _bad_request("bad-input", "provide exactly one of 'html' or 'url'")
    if request.url is not None:
        try:
            html = fetch_url(request.url, timeout=request.timeout, offline=request.offline)
            source = request.url
        except FetchError as exc:
            return _error(502, "fetch-failed", str(exc))
    else:
        html = request.html or ""
        source = "inline"

    parsed = parse_document(html, source=source)
    try:
        layout = (
            LayoutConfig.from_dict(request.layout_config)
            if request.layout_config
            else LayoutConfig()
        )
        doc = estimate_layout(parsed.document, layout)
        if request.overrides:
            doc = apply_layout_overrides(doc, overrides_from_dict(request.overrides))
    except (KeyError, TypeError, ValueError) as exc:
        return _bad_request("bad-layout", str(exc))
    return JSONResponse(
        content={"document": document_to_dict(doc), "diagnostics": list(parsed.diagnostics)}
    )


@app.post("/api/model")
def api_model(request: ModelRequest):
    try:
        doc = document_from_dict(request.document)
        task = task_from_dict(request.task)
        settings = _build_settings(request.model_dump())
    except (TaskFormatError, ValueError) as exc:
        return _bad_request("bad-payload", str(exc))

    violations = validate_task(doc, task)
    if violations:
        return _bad_request(
            "validation-failed",
            f"task has {len(violations)} violation(s)",
            [{"step": v.step, "code": v.code, "message": v.message} for v in violations],
        )
    try:
        result = model_task(
            doc,
            task,
            profile=settings["profile"],
            strategy=settings["strategy"],
            table=settings["table"],
            rule=settings["rule"],
            fitts=settings["fitts"],
            shifted_keys_double=request.shifted_keys_double,
        )
    except ValueError as exc:
        return _bad_request("model-failed", str(exc))
    return JSONResponse(content=result_to_dict(result, include_explanation=True))


@app.post("/api/compare")
def api_compare(request: CompareRequest):
    try:
        task = task_from_dict(request.task)
        settings = _build_settings(request.settings)
        designs = [
            (design.label, document_from_dict(design.document)) for design in request.designs
        ]
    except (TaskFormatError, ValueError) as exc:
        return _bad_request("bad-payload", str(exc))
    try:
        report = compare_designs(
            designs,
            task,
            profile=settings["profile"],
            strategy=settings["strategy"],
            table=settings["table"],
            rule=settings["rule"],
            fitts=settings["fitts"],
        )
    except DesignTaskError as exc:
        return _bad_request(
            "validation-failed",
            str(exc),
            [{"step": v.step, "code": v.code, "message": v.message} for v in exc.violations],
        )
    except ValueError as exc:
        return _bad_request("bad-payload", str(exc))
    return JSONResponse(content=comparison_to_dict(report))


@app.get("/api/profiles")
def api_profiles():
    default_table = OperatorTable()
    return JSONResponse(
        content={
            "skills": {skill.value: KEYSTROKE_SECONDS[skill] for skill in TypingSkill},
            "operator_table": {
                "K": default_table.K,
                "P": default_table.P,
                "H": default_table.H,
                "M": default_table.M,
                "BB": default_table.BB,
                "R": default_table.R,
            },
            "fitts": {"a": FittsCoefficients().a, "b": FittsCoefficients().b},
            "strategies": [kind.value for kind in StrategyKind],
            "mental_rules": [rule.value for rule in MentalPlacementRule],
            "sus_bands": [
                {"low": band.low, "high": band.high, "label": band.label}
                for band in metrics.DEFAULT_SUS_BANDS
            ],
        }
    )


@app.post("/api/metrics/sus")
def api_sus(request: SusRequest):
    rows = request.responses
    if rows and isinstance(rows[0], (int, float)):
        rows = [rows]
    try:
        scores = metrics.sus_scores([[int(x) for x in row] for row in rows])
        mean = float(sum(scores) / len(scores)) if scores else 0.0
        band = metrics.sus_band(mean)
    except (TypeError, ValueError) as exc:
        return _bad_request("bad-metrics-input", str(exc))
    return JSONResponse(
        content={"per_respondent": scores, "mean": mean, "band": band}
    )


@app.post("/api/metrics/alpha")
def api_alpha(request: AlphaRequest):
    try:
        matrix = metrics.SurveyMatrix(
            responses=np.array(request.responses),
            scale_min=request.scale_min,
            scale_max=request.scale_max,
        )
        value = metrics.cronbach_alpha(matrix)
    except ValueError as exc:
        return _bad_request("bad-metrics-input", str(exc))
    return JSONResponse(
        content={"alpha": value, "n_respondents": matrix.n_respondents, "n_items": matrix.n_items}
    )


@app.post("/api/metrics/gain")
def api_gain(request: GainRequest):
    try:
        value = metrics.normalized_gain(request.pre, request.post, request.max_score)
    except ValueError as exc:
        return _bad_request("bad-metrics-input", str(exc))
    return JSONResponse(content={"gain_percent": value})
