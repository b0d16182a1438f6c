"""Wire formats shared by the CLI and HTTP service, plus input loading."""
from __future__ import annotations

import csv
import io
import json
import urllib.error
import urllib.request
from typing import Any, Mapping, Optional

from .engine import (
    ExplanationRecord,
    ModelResult,
    US_PER_SECOND,
    explain_trace,
)
from .model import (
    Device,
    ElementKind,
    FittsCoefficients,
    FormDocument,
    FormElement,
    Geometry,
    MentalPlacementRule,
    OperatorTable,
    Press,
    SelectOption,
    StepDevices,
    Strategy,
    StrategyKind,
    TaskSpec,
    TaskStep,
    Toggle,
    TypeText,
    TypingSkill,
    UserProfile,
)


class TaskFormatError(ValueError):
    """Raised for a syntactically readable but malformed task/config payload."""


class FetchError(RuntimeError):
    def __init__(self, url: str, reason: str):
        super().__init__(f"could not fetch {url}: {reason}")
        self.url = url
        self.reason = reason


def seconds_str(duration_us: int) -> str:
    return f"{duration_us / US_PER_SECOND:.6f}"


def seconds_value(duration_us: int) -> float:
    return round(duration_us / US_PER_SECOND, 6)


# --- documents --------------------------------------------------------------


def geometry_to_dict(geometry: Geometry) -> dict[str, float]:
    return {
        "x": geometry.x,
        "y": geometry.y,
        "width": geometry.width,
        "height": geometry.height,
    }


def document_to_dict(doc: FormDocument) -> dict[str, Any]:
    return {
        "source": doc.source,
        "title": doc.title,
        "elements": [
            {
                "id": e.id,
                "kind": e.kind.value,
                "label": e.label,
                "focus_index": e.focus_index,
                "options": list(e.options),
                "geometry": geometry_to_dict(e.geometry) if e.geometry else None,
            }
            for e in doc.elements
        ],
    }


def document_from_dict(data: Mapping) -> FormDocument:
    try:
        elements = tuple(
            FormElement(
                id=e["id"],
                kind=ElementKind(e["kind"]),
                label=e.get("label", ""),
                focus_index=int(e["focus_index"]),
                options=tuple(e.get("options") or ()),
                geometry=(
                    Geometry(
                        x=float(e["geometry"]["x"]),
                        y=float(e["geometry"]["y"]),
                        width=float(e["geometry"]["width"]),
                        height=float(e["geometry"]["height"]),
                    )
                    if e.get("geometry")
                    else None
                ),
            )
            for e in data.get("elements", ())
        )
        return FormDocument(
            source=data.get("source", ""),
            title=data.get("title", ""),
            elements=elements,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise TaskFormatError(f"malformed document payload: {exc}") from exc


# --- tasks ------------------------------------------------------------------


def _action_from_dict(data: Mapping, index: int):
    kind = data.get("type")
    if kind == "type":
        if "value" not in data:
            raise TaskFormatError(f"step {index}: type action needs a 'value'")
        return TypeText(str(data["value"]))
    if kind == "select":
        if "index" not in data:
            raise TaskFormatError(f"step {index}: select action needs an 'index'")
        return SelectOption(int(data["index"]))
    if kind == "toggle":
        return Toggle()
    if kind == "press":
        return Press()
    raise TaskFormatError(f"step {index}: unknown action type {kind!r}")


def task_from_dict(data: Mapping) -> TaskSpec:
    """Task file: {steps: [{element_id, action: {type, value?|index?}}], response_times?}."""
    if not isinstance(data, Mapping) or "steps" not in data:
        raise TaskFormatError("task payload must be an object with a 'steps' list")
    steps = []
    for i, raw in enumerate(data["steps"]):
        if "element_id" not in raw:
            raise TaskFormatError(f"step {i}: missing 'element_id'")
        if "action" not in raw or not isinstance(raw["action"], Mapping):
            raise TaskFormatError(f"step {i}: missing 'action' object")
        steps.append(TaskStep(str(raw["element_id"]), _action_from_dict(raw["action"], i)))
    response_times = data.get("response_times")
    try:
        return TaskSpec(
            tuple(steps),
            tuple(float(r) for r in response_times) if response_times is not None else None,
        )
    except ValueError as exc:
        raise TaskFormatError(str(exc)) from exc


def action_to_dict(action) -> dict[str, Any]:
    if isinstance(action, TypeText):
        return {"type": "type", "value": action.text}
    if isinstance(action, SelectOption):
        return {"type": "select", "index": action.index}
    if isinstance(action, Toggle):
        return {"type": "toggle"}
    return {"type": "press"}


def task_to_dict(task: TaskSpec) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "steps": [
            {"element_id": step.element_id, "action": action_to_dict(step.action)}
            for step in task.steps
        ]
    }
    if task.response_times is not None:
        payload["response_times"] = list(task.response_times)
    return payload


# --- settings ---------------------------------------------------------------


def profile_from_dict(data: Optional[Mapping]) -> UserProfile:
    data = data or {}
    try:
        return UserProfile(
            typing_skill=TypingSkill(data.get("typing_skill", "average")),
            motor_multiplier=float(data.get("motor_multiplier", 1.0)),
            cognitive_multiplier=float(data.get("cognitive_multiplier", 1.0)),
        )
    except ValueError as exc:
        raise TaskFormatError(f"malformed profile: {exc}") from exc


def strategy_from_dict(data: Optional[Mapping | str]) -> Strategy:
    if data is None:
        return Strategy()
    if isinstance(data, str):
        try:
            return Strategy(StrategyKind(data))
        except ValueError as exc:
            raise TaskFormatError(f"unknown strategy {data!r}") from exc
    try:
        overrides = {
            int(step): StepDevices(
                reach=Device(o["reach"]) if o.get("reach") else None,
                fill=Device(o["fill"]) if o.get("fill") else None,
            )
            for step, o in (data.get("overrides") or {}).items()
        }
        return Strategy(StrategyKind(data.get("kind", "mouse-keyboard")), overrides)
    except (TypeError, ValueError) as exc:
        raise TaskFormatError(f"malformed strategy: {exc}") from exc


def operator_table_from_dict(data: Optional[Mapping], skill: TypingSkill) -> OperatorTable:
    overrides = dict(data or {})
    unknown = set(overrides) - {"K", "P", "H", "M", "BB", "R"}
    if unknown:
        raise TaskFormatError(f"unknown operator table keys: {sorted(unknown)}")
    try:
        return OperatorTable.for_skill(skill, **{k: float(v) for k, v in overrides.items()})
    except ValueError as exc:
        raise TaskFormatError(f"malformed operator table: {exc}") from exc


def fitts_from_dict(data: Optional[Mapping | bool]) -> Optional[FittsCoefficients]:
    if data is None or data is False:
        return None
    if data is True:
        return FittsCoefficients()
    if not data.get("enabled", True):
        return None
    try:
        return FittsCoefficients(
            a=float(data.get("a", FittsCoefficients().a)),
            b=float(data.get("b", FittsCoefficients().b)),
        )
    except ValueError as exc:
        raise TaskFormatError(f"malformed Fitts coefficients: {exc}") from exc


def settings_to_dict(result: ModelResult) -> dict[str, Any]:
    settings = result.settings
    return {
        "profile": {
            "typing_skill": settings.profile.typing_skill.value,
            "motor_multiplier": settings.profile.motor_multiplier,
            "cognitive_multiplier": settings.profile.cognitive_multiplier,
        },
        "strategy": {
            "kind": settings.strategy.kind.value,
            "overrides": {
                str(step): {
                    "reach": o.reach.value if o.reach else None,
                    "fill": o.fill.value if o.fill else None,
                }
                for step, o in sorted(settings.strategy.overrides.items())
            },
        },
        "mental_rule": settings.rule.value,
        "fitts": {
            "enabled": settings.fitts_enabled,
            "a": settings.fitts.a if settings.fitts else None,
            "b": settings.fitts.b if settings.fitts else None,
        },
        "operator_table": {
            "K": settings.table.K,
            "P": settings.table.P,
            "H": settings.table.H,
            "M": settings.table.M,
            "BB": settings.table.BB,
            "R": settings.table.R,
        },
        "shifted_keys_double": settings.shifted_keys_double,
    }


# --- results ----------------------------------------------------------------


def explanation_to_dicts(records: list[ExplanationRecord]) -> list[dict[str, Any]]:
    return [
        {
            "position": r.position,
            "step": r.step_index,
            "element_id": r.element_id,
            "phase": r.phase,
            "code": r.code,
            "detail": r.detail,
            "seconds": seconds_value(r.duration_us),
            "duration_us": r.duration_us,
            "rationale": r.rationale,
        }
        for r in records
    ]


def result_to_dict(result: ModelResult, include_explanation: bool = True) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "total_seconds": seconds_value(result.total_us),
        "total_us": result.total_us,
        "per_element_seconds": {
            element_id: seconds_value(us)
            for element_id, us in sorted(result.per_element_us().items())
        },
        "entries": [
            {
                "step": entry.step_index,
                "element_id": entry.element_id,
                "phase": entry.phase,
                "phase_seconds": seconds_value(entry.phase_us),
                "phase_us": entry.phase_us,
                "operators": [
                    {
                        "code": op.code,
                        "seconds": seconds_value(op.duration_us),
                        "duration_us": op.duration_us,
                        "detail": op.detail,
                        "rationale": op.rationale,
                    }
                    for op in entry.operators
                ],
            }
            for entry in result.entries
        ],
        "settings": settings_to_dict(result),
    }
    if include_explanation:
        payload["explanation"] = explanation_to_dicts(explain_trace(result))
    return payload


def render_json(result: ModelResult, explain: bool = False) -> str:
    return json.dumps(result_to_dict(result, include_explanation=explain), indent=2, sort_keys=True)


def render_csv(result: ModelResult) -> str:
    """One row per operator for spreadsheet analysis."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["step", "element_id", "phase", "code", "seconds", "rationale"])
    for entry in result.entries:
        for op in entry.operators:
            writer.writerow(
                [
                    entry.step_index,
                    entry.element_id,
                    entry.phase,
                    op.code,
                    seconds_str(op.duration_us),
                    op.rationale,
                ]
            )
    writer.writerow(["total", "", "", "", seconds_str(result.total_us), ""])
    return out.getvalue()


def render_text(result: ModelResult, explain: bool = False) -> str:
    lines = []
    settings = result.settings
    fitts = (
        f"on (a={settings.fitts.a:g}, b={settings.fitts.b:g})"
        if settings.fitts
        else "off"
    )
    lines.append(
        f"profile={settings.profile.typing_skill.value}"
        f" motor×{settings.profile.motor_multiplier:g}"
        f" cognitive×{settings.profile.cognitive_multiplier:g}"
        f" strategy={settings.strategy.kind.value}"
        f" mental={settings.rule.value} fitts={fitts}"
    )
    lines.append("")
    for entry in result.entries:
        ops = " ".join(f"{op.code}({seconds_str(op.duration_us)})" for op in entry.operators)
        lines.append(
            f"step {entry.step_index:>2}  {entry.phase:<10} {entry.element_id:<24}"
            f" {seconds_str(entry.phase_us):>10}s  {ops}"
        )
    lines.append("")
    for element_id, us in sorted(result.per_element_us().items()):
        lines.append(f"element {element_id:<24} {seconds_str(us):>10}s")
    lines.append("")
    lines.append(f"total {seconds_str(result.total_us)}s")
    if explain:
        lines.append("")
        lines.append("explanation:")
        for record in explain_trace(result):
            lines.append(
                f"  [{record.position:>3}] step {record.step_index} {record.element_id}"
                f" {record.phase:<10} {record.code:<2} {seconds_str(record.duration_us)}s"
                f"  {record.detail}  -- {record.rationale}"
            )
    lines.append("")
    return "\n".join(lines)


# --- fetching ---------------------------------------------------------------


def fetch_url(url: str, timeout: float = 10.0, offline: bool = False) -> str:
    """Thin URL fetcher; parsing itself never touches the network."""
    if offline:
        raise FetchError(url, "offline mode is enabled")
    if not url.startswith(("http://", "https://", "file://")):
        raise FetchError(url, "unsupported URL scheme")
    try:
        with urllib.request.urlopen(url, timeout=timeout) as response:
            charset = response.headers.get_content_charset() or "utf-8"
            return response.read().decode(charset, errors="replace")
    except (urllib.error.URLError, OSError, ValueError) as exc:
        raise FetchError(url, str(exc)) from exc
