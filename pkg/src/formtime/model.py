"""Shared domain vocabulary: form structure, tasks, profiles, and operator tables."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional, Sequence, Union


class UnknownElementError(ValueError):
    """Raised when an element id does not resolve in a document."""

    def __init__(self, element_id: str):
        super().__init__(f"unknown element id: {element_id!r}")
        self.element_id = element_id


class ElementKind(str, enum.Enum):
    TEXT_INPUT = "text"
    PASSWORD = "password"
    TEXT_AREA = "textarea"
    SELECT = "select"
    CHECKBOX = "checkbox"
    RADIO = "radio"
    BUTTON = "button"
    SUBMIT = "submit"


#: Kinds that carry an ordered option list.
OPTIONED_KINDS = frozenset({ElementKind.SELECT, ElementKind.RADIO})

#: Kinds that accept free-text keyboard entry.
TEXT_KINDS = frozenset({ElementKind.TEXT_INPUT, ElementKind.PASSWORD, ElementKind.TEXT_AREA})

#: Kinds activated by a single press/click.
PRESS_KINDS = frozenset({ElementKind.BUTTON, ElementKind.SUBMIT})


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class Geometry:
    """Pixel box of an element; the canonical interaction point is its center."""

    x: float
    y: float
    width: float
    height: float

    def __post_init__(self) -> None:
        for name in ("x", "y", "width", "height"):
            _require_finite(name, getattr(self, name))
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"width/height must be positive, got {self.width}x{self.height}")
        if self.x < 0 or self.y < 0:
            raise ValueError(f"coordinates must be non-negative, got ({self.x}, {self.y})")

    def center(self) -> tuple[float, float]:
        return (self.x + self.width / 2.0, self.y + self.height / 2.0)


@dataclass(frozen=True)
class FormElement:
    id: str
    kind: ElementKind
    label: str
    focus_index: int
    options: tuple[str, ...] = ()
    geometry: Optional[Geometry] = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("element id must be non-empty")
        if self.focus_index < 0:
            raise ValueError(f"focus_index must be >= 0, got {self.focus_index}")
        object.__setattr__(self, "options", tuple(self.options))
        has_options = len(self.options) > 0
        if (self.kind in OPTIONED_KINDS) != has_options:
            raise ValueError(
                f"element {self.id!r}: options must be non-empty exactly for "
                f"select/radio kinds (kind={self.kind.value}, {len(self.options)} options)"
            )


@dataclass(frozen=True)
class FormDocument:
    source: str
    title: str
    elements: tuple[FormElement, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        ids = [e.id for e in self.elements]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate element ids: {dupes}")
        focus = sorted(e.focus_index for e in self.elements)
        if focus != list(range(len(self.elements))):
            raise ValueError("focus_index values must be a permutation of 0..n-1")
        object.__setattr__(self, "_by_id", {e.id: e for e in self.elements})

    def element(self, element_id: str) -> FormElement:
        try:
            return self._by_id[element_id]  # type: ignore[attr-defined]
        except KeyError:
            raise UnknownElementError(element_id) from None

    def has(self, element_id: str) -> bool:
        return element_id in self._by_id  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return len(self.elements)


# --- task actions ---------------------------------------------------------


@dataclass(frozen=True)
class TypeText:
    """Enter a text value with the keyboard."""

    text: str


@dataclass(frozen=True)
class SelectOption:
    """Choose the option at `index` of a select or radio element."""

    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError(f"option index must be >= 0, got {self.index}")


@dataclass(frozen=True)
class Toggle:
    """Flip a checkbox."""


@dataclass(frozen=True)
class Press:
    """Activate a button or submit control."""


Action = Union[TypeText, SelectOption, Toggle, Press]


@dataclass(frozen=True)
class TaskStep:
    element_id: str
    action: Action


@dataclass(frozen=True)
class TaskSpec:
    """Ordered element interactions to model; order is execution order."""

    steps: tuple[TaskStep, ...]
    response_times: Optional[tuple[float, ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.response_times is not None:
            rts = tuple(float(r) for r in self.response_times)
            if len(rts) != len(self.steps):
                raise ValueError(
                    f"response_times length {len(rts)} != step count {len(self.steps)}"
                )
            for i, r in enumerate(rts):
                _require_finite(f"response_times[{i}]", r)
                if r < 0:
                    raise ValueError(f"response_times[{i}] must be >= 0, got {r}")
            object.__setattr__(self, "response_times", rts)

    def response_time(self, step_index: int) -> float:
        if self.response_times is None:
            return 0.0
        return self.response_times[step_index]


# --- modeled user ---------------------------------------------------------


class TypingSkill(str, enum.Enum):
    EXPERT = "expert"
    SKILLED = "skilled"
    AVERAGE = "average"
    NONTYPIST = "nontypist"


#: Default seconds per keystroke by typing skill (strictly increasing).
KEYSTROKE_SECONDS: Mapping[TypingSkill, float] = MappingProxyType(
    {
        TypingSkill.EXPERT: 0.12,
        TypingSkill.SKILLED: 0.20,
        TypingSkill.AVERAGE: 0.28,
        TypingSkill.NONTYPIST: 1.20,
    }
)


@dataclass(frozen=True)
class UserProfile:
    """Modeled user: typing skill plus age-style adjustment multipliers.

    motor_multiplier scales physical operators (K, P, BB, H);
    cognitive_multiplier scales mental preparation (M). 1.0 = young adult.
    """

    typing_skill: TypingSkill = TypingSkill.AVERAGE
    motor_multiplier: float = 1.0
    cognitive_multiplier: float = 1.0

    def __post_init__(self) -> None:
        _require_finite("motor_multiplier", self.motor_multiplier)
        _require_finite("cognitive_multiplier", self.cognitive_multiplier)
        if self.motor_multiplier < 1.0 or self.cognitive_multiplier < 1.0:
            raise ValueError("profile multipliers must be >= 1.0")


@dataclass(frozen=True)
class OperatorTable:
    """Base seconds per KLM operator. All values are configuration, not constants."""

    K: float = KEYSTROKE_SECONDS[TypingSkill.AVERAGE]
    P: float = 1.1
    H: float = 0.4
    M: float = 1.35
    BB: float = 0.2
    R: float = 0.0

    def __post_init__(self) -> None:
        for name in ("K", "P", "H", "M", "BB", "R"):
            value = getattr(self, name)
            _require_finite(name, value)
            if value < 0:
                raise ValueError(f"operator {name} must be >= 0, got {value}")

    @classmethod
    def for_skill(cls, skill: TypingSkill, **overrides: float) -> "OperatorTable":
        values = {"K": KEYSTROKE_SECONDS[skill]}
        values.update(overrides)
        return cls(**values)


@dataclass(frozen=True)
class FittsCoefficients:
    """Shannon-form pointing law: MT = a + b * log2(D/W + 1)."""

    a: float = 0.1
    b: float = 0.15

    def __post_init__(self) -> None:
        _require_finite("a", self.a)
        _require_finite("b", self.b)
        if self.a < 0:
            raise ValueError(f"intercept a must be >= 0, got {self.a}")
        if self.b <= 0:
            raise ValueError(f"slope b must be > 0, got {self.b}")


# --- interaction strategy -------------------------------------------------


class Device(str, enum.Enum):
    KEYBOARD = "keyboard"
    MOUSE = "mouse"


class StrategyKind(str, enum.Enum):
    MOUSE_REACH_KEYBOARD_FILL = "mouse-keyboard"
    KEYBOARD_ONLY = "keyboard"
    MOUSE_ONLY = "mouse"


#: (reach device, fill device) per strategy kind.
_STRATEGY_DEVICES: Mapping[StrategyKind, tuple[Device, Device]] = MappingProxyType(
    {
        StrategyKind.MOUSE_REACH_KEYBOARD_FILL: (Device.MOUSE, Device.KEYBOARD),
        StrategyKind.KEYBOARD_ONLY: (Device.KEYBOARD, Device.KEYBOARD),
        StrategyKind.MOUSE_ONLY: (Device.MOUSE, Device.MOUSE),
    }
)


@dataclass(frozen=True)
class StepDevices:
    """Per-step device override; None keeps the strategy default."""

    reach: Optional[Device] = None
    fill: Optional[Device] = None


@dataclass(frozen=True)
class Strategy:
    kind: StrategyKind = StrategyKind.MOUSE_REACH_KEYBOARD_FILL
    overrides: Mapping[int, StepDevices] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "overrides", MappingProxyType(dict(self.overrides)))

    def devices_for(self, step_index: int) -> tuple[Device, Device]:
        reach, fill = _STRATEGY_DEVICES[self.kind]
        override = self.overrides.get(step_index)
        if override is not None:
            reach = override.reach or reach
            fill = override.fill or fill
        return reach, fill


class MentalPlacementRule(str, enum.Enum):
    ONCE_PER_ELEMENT = "per-element"
    PER_CHUNK = "per-chunk"
    NONE = "none"


# --- task validation ------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    step: int
    code: str
    message: str


def validate_task(doc: FormDocument, task: TaskSpec) -> list[Violation]:
    """Return every constraint violation in `task` against `doc` (empty = valid)."""
    violations: list[Violation] = []
    for i, step in enumerate(task.steps):
        if not doc.has(step.element_id):
            violations.append(
                Violation(i, "unknown-element", f"step {i}: unknown element id {step.element_id!r}")
            )
            continue
        element = doc.element(step.element_id)
        action = step.action
        if isinstance(action, TypeText):
            if element.kind not in TEXT_KINDS:
                violations.append(
                    Violation(
                        i,
                        "action-mismatch",
                        f"step {i}: cannot type into {element.kind.value} element {element.id!r}",
                    )
                )
        elif isinstance(action, SelectOption):
            if element.kind not in OPTIONED_KINDS:
                violations.append(
                    Violation(
                        i,
                        "action-mismatch",
                        f"step {i}: cannot select an option of {element.kind.value} "
                        f"element {element.id!r}",
                    )
                )
            elif action.index >= len(element.options):
                violations.append(
                    Violation(
                        i,
                        "option-out-of-range",
                        f"step {i}: option index {action.index} >= {len(element.options)} "
                        f"options of element {element.id!r}",
                    )
                )
        elif isinstance(action, Toggle):
            if element.kind is not ElementKind.CHECKBOX:
                violations.append(
                    Violation(
                        i,
                        "action-mismatch",
                        f"step {i}: cannot toggle {element.kind.value} element {element.id!r}",
                    )
                )
        elif isinstance(action, Press):
            if element.kind not in PRESS_KINDS:
                violations.append(
                    Violation(
                        i,
                        "action-mismatch",
                        f"step {i}: cannot press {element.kind.value} element {element.id!r}",
                    )
                )
        else:  # pragma: no cover - unreachable with the Action union
            violations.append(Violation(i, "unknown-action", f"step {i}: unknown action {action!r}"))
    return violations


def focus_distance(doc: FormDocument, from_id: Optional[str], to_id: str) -> int:
    """Tab presses needed to move focus between elements (|delta| on focus order).

    `from_id=None` means the pre-form focus position, one Tab before the first
    focusable element, so reaching focus_index k costs k+1 presses.
    """
    to_pos = doc.element(to_id).focus_index
    from_pos = -1 if from_id is None else doc.element(from_id).focus_index
    return abs(to_pos - from_pos)


def steps_from_pairs(pairs: Sequence[tuple[str, Action]]) -> tuple[TaskStep, ...]:
    """Convenience constructor used by tests and demos."""
    return tuple(TaskStep(element_id, action) for element_id, action in pairs)
