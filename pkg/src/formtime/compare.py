"""Side-by-side modeling of alternative form designs under one shared task."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional, Sequence

from .engine import ModelResult, model_task
from .model import (
    FittsCoefficients,
    FormDocument,
    MentalPlacementRule,
    OperatorTable,
    Strategy,
    TaskSpec,
    UserProfile,
    validate_task,
)
from .serialize import result_to_dict, seconds_value


class DesignTaskError(ValueError):
    """The shared task is invalid against one of the compared designs."""

    def __init__(self, label: str, violations):
        super().__init__(
            f"task is invalid for design {label!r}: "
            + "; ".join(v.message for v in violations)
        )
        self.label = label
        self.violations = tuple(violations)


@dataclass(frozen=True)
class ComparisonReport:
    results: tuple[tuple[str, ModelResult], ...]
    deltas: tuple[tuple[str, str, int], ...]  # (label_a, label_b, total_a - total_b) in us
    winner: str


def compare_designs(
    designs: Sequence[tuple[str, FormDocument]],
    task: TaskSpec,
    profile: Optional[UserProfile] = None,
    strategy: Optional[Strategy] = None,
    table: Optional[OperatorTable] = None,
    rule: MentalPlacementRule = MentalPlacementRule.ONCE_PER_ELEMENT,
    fitts: Optional[FittsCoefficients] = None,
) -> ComparisonReport:
    """Model every design identically; the winner has the minimal total time.

    Ties go to the earliest design in input order.
    """
    if len(designs) < 2:
        raise ValueError(f"comparison needs at least 2 designs, got {len(designs)}")
    for label, doc in designs:
        violations = validate_task(doc, task)
        if violations:
            raise DesignTaskError(label, violations)

    results = tuple(
        (label, model_task(doc, task, profile, strategy, table, rule, fitts))
        for label, doc in designs
    )
    deltas = tuple(
        (results[i][0], results[j][0], results[i][1].total_us - results[j][1].total_us)
        for i in range(len(results))
        for j in range(i + 1, len(results))
    )
    winner = min(results, key=lambda pair: pair[1].total_us)[0]
    return ComparisonReport(results, deltas, winner)


def comparison_to_dict(report: ComparisonReport, include_explanation: bool = False) -> dict[str, Any]:
    return {
        "winner": report.winner,
        "results": [
            {
                "label": label,
                "total_seconds": seconds_value(result.total_us),
                "total_us": result.total_us,
                "result": result_to_dict(result, include_explanation=include_explanation),
            }
            for label, result in report.results
        ],
        "deltas": [
            {
                "a": a,
                "b": b,
                "delta_seconds": seconds_value(delta_us),
                "delta_us": delta_us,
            }
            for a, b, delta_us in report.deltas
        ],
    }
