"""Usability study measurement: SUS scoring and banding, reliability, learning gain.

These are the formula-level instruments used around the modeling tool itself:
questionnaire scoring, internal-consistency reliability, normalized learning
gain, and descriptive statistics with t-based confidence intervals.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional, Sequence

import numpy as np
from scipy import stats as scipy_stats

SUS_ITEM_COUNT = 10


@dataclass(frozen=True)
class Band:
    low: float
    high: float
    label: str


def _shipped_bands() -> tuple[Band, ...]:
    payload = json.loads(
        resources.files("formtime.data").joinpath("sus_bands.json").read_text("utf-8")
    )
    return tuple(Band(b["low"], b["high"], b["label"]) for b in payload["bands"])


DEFAULT_SUS_BANDS = _shipped_bands()


def load_band_table(text: str) -> tuple[Band, ...]:
    """Band table JSON: list of {low, high, label}, evaluated in order."""
    data = json.loads(text)
    if isinstance(data, dict):
        data = data["bands"]
    return tuple(Band(float(b["low"]), float(b["high"]), str(b["label"])) for b in data)


def sus_score(responses: Sequence[int]) -> float:
    """Score one SUS response set (10 items, 1..5) on the 0..100 scale.

    Odd items contribute (response - 1), even items (5 - response); the sum is
    multiplied by 2.5.
    """
    if len(responses) != SUS_ITEM_COUNT:
        raise ValueError(f"expected {SUS_ITEM_COUNT} SUS items, got {len(responses)}")
    total = 0
    for i, response in enumerate(responses):
        if not 1 <= response <= 5:
            raise ValueError(f"SUS item {i} out of range 1..5: {response!r}")
        if i % 2 == 0:  # odd-numbered item (1-based)
            total += response - 1
        else:
            total += 5 - response
    return 2.5 * total


def sus_scores(rows: Sequence[Sequence[int]]) -> list[float]:
    return [sus_score(row) for row in rows]


def sus_mean(rows: Sequence[Sequence[int]]) -> float:
    """Average per-respondent SUS scores (scored individually, then meaned)."""
    scores = sus_scores(rows)
    if not scores:
        raise ValueError("no respondents")
    return float(np.mean(scores))


def sus_band(score: float, bands: Optional[Sequence[Band]] = None) -> str:
    """Classify a SUS score with the configured adjective band table."""
    if not 0 <= score <= 100:
        raise ValueError(f"SUS score out of range 0..100: {score!r}")
    for band in bands if bands is not None else DEFAULT_SUS_BANDS:
        if band.low <= score <= band.high:
            return band.label
    raise ValueError(f"no band covers score {score!r}")


@dataclass(frozen=True)
class SurveyMatrix:
    """n_respondents x k_items matrix of integer responses on a declared scale."""

    responses: np.ndarray
    scale_min: int = 1
    scale_max: int = 5
    item_ids: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        matrix = np.asarray(self.responses)
        if matrix.ndim != 2:
            raise ValueError(f"responses must be rectangular (2-D), got {matrix.ndim}-D")
        if not np.issubdtype(matrix.dtype, np.number):
            raise ValueError("responses must be numeric")
        if np.any(matrix < self.scale_min) or np.any(matrix > self.scale_max):
            raise ValueError(
                f"responses outside declared scale {self.scale_min}..{self.scale_max}"
            )
        object.__setattr__(self, "responses", matrix)
        if self.item_ids and len(self.item_ids) != matrix.shape[1]:
            raise ValueError("item_ids length does not match item count")

    @property
    def n_respondents(self) -> int:
        return int(self.responses.shape[0])

    @property
    def n_items(self) -> int:
        return int(self.responses.shape[1])


def load_survey_csv(text: str, scale_min: int = 1, scale_max: int = 5) -> SurveyMatrix:
    """CSV with a header row of item ids and one row per respondent."""
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if len(rows) < 2:
        raise ValueError("survey CSV needs a header row and at least one respondent row")
    header = tuple(cell.strip() for cell in rows[0])
    try:
        matrix = np.array([[int(cell) for cell in row] for row in rows[1:]])
    except ValueError as exc:
        raise ValueError(f"survey CSV has a non-integer cell: {exc}") from None
    if matrix.shape[1] != len(header):
        raise ValueError("survey CSV rows do not all match the header width")
    return SurveyMatrix(matrix, scale_min, scale_max, header)


def cronbach_alpha(matrix: SurveyMatrix | np.ndarray) -> float:
    """Internal consistency: alpha = k/(k-1) * (1 - sum(item var)/var(total)).

    Sample variances (n-1 denominator). Undefined when the total score does
    not vary.
    """
    data = matrix.responses if isinstance(matrix, SurveyMatrix) else np.asarray(matrix, dtype=float)
    if data.ndim != 2:
        raise ValueError("alpha needs a 2-D respondent x item matrix")
    n, k = data.shape
    if n < 2:
        raise ValueError(f"alpha needs at least 2 respondents, got {n}")
    if k < 2:
        raise ValueError(f"alpha needs at least 2 items, got {k}")
    item_variances = data.var(axis=0, ddof=1)
    total_variance = data.sum(axis=1).var(ddof=1)
    if total_variance == 0:
        raise ValueError("alpha undefined: total-score variance is zero")
    return float(k / (k - 1) * (1.0 - item_variances.sum() / total_variance))


@dataclass(frozen=True)
class GainInput:
    pre: float
    post: float
    max_score: float

    def __post_init__(self) -> None:
        if self.pre > self.max_score:
            raise ValueError(f"pre score {self.pre} exceeds max {self.max_score}")


def normalized_gain(pre: float, post: float, max_score: float) -> float:
    """Achieved fraction of the possible improvement, as a percentage.

    100 * (post - pre) / (max - pre); negative when performance dropped.
    """
    GainInput(pre, post, max_score)
    if pre == max_score:
        raise ValueError("gain undefined: pre score equals the maximum (no possible gain)")
    return 100.0 * (post - pre) / (max_score - pre)


@dataclass(frozen=True)
class DescriptiveStats:
    n: int
    mean: float
    median: float
    sd: Optional[float]
    ci_low: Optional[float]
    ci_high: Optional[float]
    confidence: float


def descriptive_stats(values: Sequence[float], confidence: float = 0.95) -> DescriptiveStats:
    """Mean, median, sample SD, and a t-based confidence interval for the mean."""
    if not 0 < confidence < 1:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    data = np.asarray(list(values), dtype=float)
    n = data.size
    if n == 0:
        raise ValueError("descriptive_stats needs at least one value")
    mean = float(data.mean())
    median = float(np.median(data))
    if n < 2:
        return DescriptiveStats(n, mean, median, None, None, None, confidence)
    sd = float(data.std(ddof=1))
    t_quantile = float(scipy_stats.t.ppf(1.0 - (1.0 - confidence) / 2.0, n - 1))
    half_width = t_quantile * sd / np.sqrt(n)
    return DescriptiveStats(
        n, mean, median, sd, mean - half_width, mean + half_width, confidence
    )
