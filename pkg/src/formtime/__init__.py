"""formtime: keystroke-level timing predictions for web form filling.

Parse an HTML form, describe the filling task, pick a user profile and an
interaction strategy, and compile the task into a timed operator trace with
optional Fitts-law pointing. Includes the usability study measurement
formulas (SUS, Cronbach's alpha, normalized gain, descriptive statistics).
"""
from .compare import ComparisonReport, DesignTaskError, compare_designs
from .engine import (
    ExplanationRecord,
    MissingGeometryError,
    ModelResult,
    ModelSettings,
    Operator,
    PointerState,
    TaskValidationError,
    TraceEntry,
    explain_trace,
    fitts_index_of_difficulty,
    fitts_movement_time,
    model_task,
    place_mental_operators,
    pointing_time,
)
from .metrics import (
    Band,
    DescriptiveStats,
    GainInput,
    SurveyMatrix,
    cronbach_alpha,
    descriptive_stats,
    load_survey_csv,
    normalized_gain,
    sus_band,
    sus_mean,
    sus_score,
    sus_scores,
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
    UnknownElementError,
    UserProfile,
    Violation,
    focus_distance,
    validate_task,
)
from .parser import (
    LayoutConfig,
    ParsedForm,
    apply_layout_overrides,
    estimate_layout,
    parse_document,
    parse_html,
)

__version__ = "0.1.0"

__all__ = [
    "Band",
    "ComparisonReport",
    "DescriptiveStats",
    "DesignTaskError",
    "Device",
    "ElementKind",
    "ExplanationRecord",
    "FittsCoefficients",
    "FormDocument",
    "FormElement",
    "GainInput",
    "Geometry",
    "LayoutConfig",
    "MentalPlacementRule",
    "MissingGeometryError",
    "ModelResult",
    "ModelSettings",
    "Operator",
    "OperatorTable",
    "ParsedForm",
    "PointerState",
    "Press",
    "SelectOption",
    "StepDevices",
    "Strategy",
    "StrategyKind",
    "SurveyMatrix",
    "TaskSpec",
    "TaskStep",
    "TaskValidationError",
    "Toggle",
    "TraceEntry",
    "TypeText",
    "TypingSkill",
    "UnknownElementError",
    "UserProfile",
    "Violation",
    "apply_layout_overrides",
    "compare_designs",
    "cronbach_alpha",
    "descriptive_stats",
    "estimate_layout",
    "explain_trace",
    "fitts_index_of_difficulty",
    "fitts_movement_time",
    "focus_distance",
    "load_survey_csv",
    "model_task",
    "normalized_gain",
    "parse_document",
    "parse_html",
    "place_mental_operators",
    "pointing_time",
    "sus_band",
    "sus_mean",
    "sus_score",
    "sus_scores",
    "validate_task",
]
