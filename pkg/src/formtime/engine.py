"""Compile form tasks into operator-level action traces with exact timing.

Every user action is modeled in two phases: reach the element (Tab presses or
a pointer movement), then manipulate it (keystrokes and clicks). Durations are
kept as integer microseconds internally so that totals are exact sums of the
per-operator values, immune to float accumulation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from .model import (
    Device,
    ElementKind,
    FittsCoefficients,
    FormDocument,
    Geometry,
    MentalPlacementRule,
    OperatorTable,
    Press,
    SelectOption,
    Strategy,
    TaskSpec,
    TaskStep,
    Toggle,
    TypeText,
    UserProfile,
    Violation,
    focus_distance,
    validate_task,
)

US_PER_SECOND = 1_000_000

PHASE_REACH = "reach"
PHASE_MANIPULATE = "manipulate"

#: Characters that need a Shift press on a conventional US layout.
_SHIFTED_CHARS = set('~!@#$%^&*()_+{}|:"<>?')


class TaskValidationError(ValueError):
    """Raised when a task cannot be modeled against its document."""

    def __init__(self, violations: Sequence[Violation]):
        super().__init__(
            "task failed validation: " + "; ".join(v.message for v in violations)
        )
        self.violations = tuple(violations)


class MissingGeometryError(ValueError):
    def __init__(self, element_id: str):
        super().__init__(
            f"element {element_id!r} has no geometry; run layout estimation first"
        )
        self.element_id = element_id


def _us(seconds: float) -> int:
    return int(round(seconds * US_PER_SECOND))


def _scaled(multiplier: float, base_us: int) -> int:
    return int(round(multiplier * base_us))


@dataclass(frozen=True)
class Operator:
    code: str  # K | P | H | M | BB | R
    duration_us: int
    detail: str
    rationale: str

    @property
    def seconds(self) -> float:
        return self.duration_us / US_PER_SECOND


@dataclass(frozen=True)
class TraceEntry:
    step_index: int
    element_id: str
    phase: str
    operators: tuple[Operator, ...]

    @property
    def phase_us(self) -> int:
        return sum(op.duration_us for op in self.operators)

    @property
    def phase_seconds(self) -> float:
        return self.phase_us / US_PER_SECOND


@dataclass(frozen=True)
class PointerState:
    """Carrier for sequential pointing distances and hand position."""

    position: tuple[float, float] = (0.0, 0.0)
    hands: Device = Device.KEYBOARD
    focused: Optional[str] = None


INITIAL_POINTER_STATE = PointerState()


@dataclass(frozen=True)
class ModelSettings:
    profile: UserProfile
    strategy: Strategy
    rule: MentalPlacementRule
    table: OperatorTable
    fitts: Optional[FittsCoefficients] = None
    shifted_keys_double: bool = False

    @property
    def fitts_enabled(self) -> bool:
        return self.fitts is not None


@dataclass(frozen=True)
class ModelResult:
    entries: tuple[TraceEntry, ...]
    settings: ModelSettings

    @property
    def total_us(self) -> int:
        return sum(entry.phase_us for entry in self.entries)

    @property
    def total_seconds(self) -> float:
        return self.total_us / US_PER_SECOND

    def per_element_us(self) -> dict[str, int]:
        totals: dict[str, int] = {}
        for entry in self.entries:
            totals[entry.element_id] = totals.get(entry.element_id, 0) + entry.phase_us
        return totals

    def operator_count(self, code: str) -> int:
        return sum(1 for entry in self.entries for op in entry.operators if op.code == code)


@dataclass(frozen=True)
class ExplanationRecord:
    position: int
    step_index: int
    element_id: str
    phase: str
    code: str
    detail: str
    duration_us: int
    rationale: str

    @property
    def seconds(self) -> float:
        return self.duration_us / US_PER_SECOND


# --- pointing -------------------------------------------------------------


def fitts_index_of_difficulty(distance: float, target_width: float) -> float:
    """Shannon index of difficulty in bits: log2(D/W + 1)."""
    if target_width <= 0:
        raise ValueError(f"target width must be > 0, got {target_width}")
    if distance < 0:
        raise ValueError(f"distance must be >= 0, got {distance}")
    return math.log2(distance / target_width + 1.0)


def fitts_movement_time(
    distance: float, target_width: float, coefficients: FittsCoefficients
) -> float:
    """Pointing time in seconds: a + b * log2(D/W + 1)."""
    return coefficients.a + coefficients.b * fitts_index_of_difficulty(distance, target_width)


@dataclass(frozen=True)
class _Costs:
    """Profile-adjusted operator durations in integer microseconds."""

    k_us: int
    p_us: int
    h_us: int
    m_us: int
    bb_us: int

    @classmethod
    def adjust(cls, table: OperatorTable, profile: UserProfile) -> "_Costs":
        motor = profile.motor_multiplier
        return cls(
            k_us=_scaled(motor, _us(table.K)),
            p_us=_scaled(motor, _us(table.P)),
            h_us=_scaled(motor, _us(table.H)),
            m_us=_scaled(profile.cognitive_multiplier, _us(table.M)),
            bb_us=_scaled(motor, _us(table.BB)),
        )


def _pointing_operator(
    position: tuple[float, float],
    target_center: tuple[float, float],
    width_for_fitts: float,
    costs: _Costs,
    coefficients: Optional[FittsCoefficients],
    motor_multiplier: float,
    detail: str,
    distance_override: Optional[float] = None,
) -> Operator:
    if distance_override is not None:
        distance = distance_override
    else:
        distance = math.hypot(
            target_center[0] - position[0], target_center[1] - position[1]
        )
    if coefficients is None:
        return Operator("P", costs.p_us, detail, "pointing at fixed table time (Fitts disabled)")
    bits = fitts_index_of_difficulty(distance, width_for_fitts)
    seconds = coefficients.a + coefficients.b * bits
    duration = _scaled(motor_multiplier, _us(seconds))
    rationale = f"Fitts: D={distance:.2f}px W={width_for_fitts:.2f}px ID={bits:.6f}b"
    return Operator("P", duration, detail, rationale)


def pointing_time(
    state: PointerState,
    target: Geometry,
    table: OperatorTable,
    coefficients: Optional[FittsCoefficients],
    profile: UserProfile,
) -> tuple[Operator, PointerState]:
    """One pointing act to `target`; the pointer ends at the target center."""
    costs = _Costs.adjust(table, profile)
    center = target.center()
    op = _pointing_operator(
        state.position,
        center,
        min(target.width, target.height),
        costs,
        coefficients,
        profile.motor_multiplier,
        "point to target",
    )
    return op, replace(state, position=center, hands=Device.MOUSE)


# --- per-step compilation ---------------------------------------------------


class _OpEmitter:
    """Accumulates operators for one phase, inserting H on hand transitions."""

    def __init__(
        self,
        costs: _Costs,
        state: PointerState,
        coefficients: Optional[FittsCoefficients],
        motor_multiplier: float,
    ):
        self.ops: list[Operator] = []
        self.costs = costs
        self.position = state.position
        self.hands = state.hands
        self.focused = state.focused
        self.coefficients = coefficients
        self.motor = motor_multiplier

    def ensure_hands(self, device: Device) -> None:
        if self.hands is not device:
            self.ops.append(
                Operator(
                    "H",
                    self.costs.h_us,
                    f"home hands to {device.value}",
                    f"homing: move hands {self.hands.value} -> {device.value}",
                )
            )
            self.hands = device

    def key(self, detail: str, rationale: str) -> None:
        self.ensure_hands(Device.KEYBOARD)
        self.ops.append(Operator("K", self.costs.k_us, detail, rationale))

    def click(self, detail: str, rationale: str = "mouse click (press + release)") -> None:
        self.ensure_hands(Device.MOUSE)
        self.ops.append(Operator("BB", self.costs.bb_us, detail, rationale))

    def point(
        self,
        target_center: tuple[float, float],
        width_for_fitts: float,
        detail: str,
        distance_override: Optional[float] = None,
    ) -> None:
        self.ensure_hands(Device.MOUSE)
        self.ops.append(
            _pointing_operator(
                self.position,
                target_center,
                width_for_fitts,
                self.costs,
                self.coefficients,
                self.motor,
                detail,
                distance_override,
            )
        )
        self.position = target_center

    def state(self) -> PointerState:
        return PointerState(self.position, self.hands, self.focused)


def _geometry_of(doc: FormDocument, element_id: str) -> Geometry:
    geometry = doc.element(element_id).geometry
    if geometry is None:
        raise MissingGeometryError(element_id)
    return geometry


def compile_reach(
    doc: FormDocument,
    step: TaskStep,
    step_index: int,
    profile: UserProfile,
    strategy: Strategy,
    table: OperatorTable,
    state: PointerState,
    fitts: Optional[FittsCoefficients] = None,
) -> tuple[TraceEntry, PointerState]:
    """Phase 1: move pointer or keyboard focus onto the step's element."""
    element = doc.element(step.element_id)
    reach_device, _ = strategy.devices_for(step_index)
    costs = _Costs.adjust(table, profile)
    emit = _OpEmitter(costs, state, fitts, profile.motor_multiplier)

    if reach_device is Device.MOUSE:
        geometry = _geometry_of(doc, element.id)
        emit.point(
            geometry.center(),
            min(geometry.width, geometry.height),
            f"point to '{element.id}'",
        )
    else:
        tabs = focus_distance(doc, state.focused, element.id)
        backward = (
            state.focused is not None
            and doc.element(state.focused).focus_index > element.focus_index
        )
        key_name = "Shift+Tab" if backward else "Tab"
        for i in range(tabs):
            emit.key(
                key_name,
                f"keyboard focus move {i + 1}/{tabs} toward '{element.id}'",
            )
        emit.focused = element.id

    entry = TraceEntry(step_index, element.id, PHASE_REACH, tuple(emit.ops))
    return entry, emit.state()


def _emit_click_like(emit: _OpEmitter, element_id: str, reach_device: Device, verb: str) -> None:
    # Single activations ride the reach device: the pointer (or focus) is
    # already on the element, so a click or a Space/Enter press completes them.
    if reach_device is Device.MOUSE:
        emit.click(f"click to {verb} '{element_id}'")
    else:
        emit.key("Space/Enter", f"activate '{element_id}' with the keyboard")


def compile_manipulate(
    doc: FormDocument,
    step: TaskStep,
    step_index: int,
    profile: UserProfile,
    strategy: Strategy,
    table: OperatorTable,
    state: PointerState,
    fitts: Optional[FittsCoefficients] = None,
    response_time: float = 0.0,
    shifted_keys_double: bool = False,
) -> tuple[TraceEntry, PointerState]:
    """Phase 2: operate the element (type, choose, toggle, press)."""
    element = doc.element(step.element_id)
    reach_device, fill_device = strategy.devices_for(step_index)
    costs = _Costs.adjust(table, profile)
    emit = _OpEmitter(costs, state, fitts, profile.motor_multiplier)
    action = step.action

    if isinstance(action, TypeText):
        total = len(action.text)
        for i, char in enumerate(action.text):
            if shifted_keys_double and (char.isupper() or char in _SHIFTED_CHARS):
                emit.key("Shift", f"hold Shift for character {i + 1}/{total}")
            emit.key(
                f"type {char!r}",
                f"keystroke {i + 1}/{total}: enter text into '{element.id}'",
            )
    elif isinstance(action, SelectOption):
        if element.kind is ElementKind.SELECT:
            if fill_device is Device.MOUSE:
                geometry = _geometry_of(doc, element.id)
                center = geometry.center()
                emit.click(f"click to open '{element.id}'")
                emit.position = center  # opening click lands on the control
                option_offset = (action.index + 1) * geometry.height
                emit.point(
                    (center[0], center[1] + option_offset),
                    geometry.height,
                    f"point to option {action.index} of '{element.id}'",
                    distance_override=option_offset,
                )
                emit.click(f"click option {action.index} of '{element.id}'")
            else:
                arrows = action.index + 1
                for i in range(arrows):
                    emit.key(
                        "ArrowDown",
                        f"arrow {i + 1}/{arrows} to option {action.index} of '{element.id}'",
                    )
                emit.key("Enter", f"confirm option {action.index} of '{element.id}'")
        else:  # radio button
            _emit_click_like(emit, element.id, reach_device, "select")
    elif isinstance(action, Toggle):
        if element.kind is not ElementKind.CHECKBOX:
            raise TaskValidationError(
                [Violation(step_index, "action-mismatch", f"cannot toggle {element.kind.value}")]
            )
        _emit_click_like(emit, element.id, reach_device, "toggle")
    elif isinstance(action, Press):
        _emit_click_like(emit, element.id, reach_device, "press")
    else:  # pragma: no cover - exhaustive over the Action union
        raise TaskValidationError(
            [Violation(step_index, "unknown-action", f"unknown action {action!r}")]
        )

    effective_response = response_time if response_time > 0 else table.R
    if effective_response > 0:
        emit.ops.append(
            Operator(
                "R",
                _us(effective_response),
                "wait for system response",
                f"system response time of {effective_response:g}s for this step",
            )
        )

    emit.focused = element.id
    entry = TraceEntry(step_index, element.id, PHASE_MANIPULATE, tuple(emit.ops))
    return entry, emit.state()


# --- mental operator placement ---------------------------------------------


def _mental_operator(costs: _Costs, rule: MentalPlacementRule) -> Operator:
    return Operator(
        "M",
        costs.m_us,
        "mental preparation",
        f"mental act placed by the {rule.value} rule",
    )


def _chunked_operators(
    operators: tuple[Operator, ...], mental: Operator
) -> tuple[Operator, ...]:
    # Extra M before a typing burst that resumes after pointer activity within
    # the same manipulate phase. A burst straight after reach shares the step's
    # initial M (same cognitive unit), so H operators do not break chunks.
    out: list[Operator] = []
    pointer_seen = False
    previous_code = ""
    for op in operators:
        if op.code == "K" and previous_code != "K" and pointer_seen:
            out.append(mental)
        if op.code in ("P", "BB"):
            pointer_seen = True
        out.append(op)
        if op.code != "H":
            previous_code = op.code
    return tuple(out)


def place_mental_operators(
    result: ModelResult,
    rule: MentalPlacementRule,
    table: Optional[OperatorTable] = None,
    profile: Optional[UserProfile] = None,
) -> ModelResult:
    """Insert M operators per `rule` into a trace compiled without them."""
    if result.operator_count("M"):
        raise ValueError("trace already contains mental operators")
    if rule is MentalPlacementRule.NONE:
        return replace(result, settings=replace(result.settings, rule=rule))

    table = table or result.settings.table
    profile = profile or result.settings.profile
    costs = _Costs.adjust(table, profile)
    mental = _mental_operator(costs, rule)

    entries: list[TraceEntry] = []
    seen_steps: set[int] = set()
    for entry in result.entries:
        operators = entry.operators
        if entry.step_index not in seen_steps:
            seen_steps.add(entry.step_index)
            operators = (mental,) + operators
        elif rule is MentalPlacementRule.PER_CHUNK and entry.phase == PHASE_MANIPULATE:
            operators = _chunked_operators(operators, mental)
        entries.append(replace(entry, operators=operators))
    return ModelResult(tuple(entries), replace(result.settings, rule=rule))


# --- whole-task modeling ----------------------------------------------------


def model_task(
    doc: FormDocument,
    task: TaskSpec,
    profile: Optional[UserProfile] = None,
    strategy: Optional[Strategy] = None,
    table: Optional[OperatorTable] = None,
    rule: MentalPlacementRule = MentalPlacementRule.ONCE_PER_ELEMENT,
    fitts: Optional[FittsCoefficients] = None,
    shifted_keys_double: bool = False,
) -> ModelResult:
    """Compile the whole task deterministically and return trace plus totals."""
    profile = profile or UserProfile()
    strategy = strategy or Strategy()
    table = table or OperatorTable.for_skill(profile.typing_skill)

    violations = validate_task(doc, task)
    if violations:
        raise TaskValidationError(violations)

    state = INITIAL_POINTER_STATE
    entries: list[TraceEntry] = []
    for i, step in enumerate(task.steps):
        reach_entry, state = compile_reach(doc, step, i, profile, strategy, table, state, fitts)
        entries.append(reach_entry)
        manipulate_entry, state = compile_manipulate(
            doc,
            step,
            i,
            profile,
            strategy,
            table,
            state,
            fitts,
            response_time=task.response_time(i),
            shifted_keys_double=shifted_keys_double,
        )
        entries.append(manipulate_entry)

    settings = ModelSettings(
        profile=profile,
        strategy=strategy,
        rule=MentalPlacementRule.NONE,
        table=table,
        fitts=fitts,
        shifted_keys_double=shifted_keys_double,
    )
    result = ModelResult(tuple(entries), settings)
    return place_mental_operators(result, rule, table, profile)


def explain_trace(result: ModelResult) -> list[ExplanationRecord]:
    """One record per operator, in execution order; durations sum to the total."""
    records: list[ExplanationRecord] = []
    for entry in result.entries:
        for op in entry.operators:
            records.append(
                ExplanationRecord(
                    position=len(records),
                    step_index=entry.step_index,
                    element_id=entry.element_id,
                    phase=entry.phase,
                    code=op.code,
                    detail=op.detail,
                    duration_us=op.duration_us,
                    rationale=op.rationale,
                )
            )
    return records
