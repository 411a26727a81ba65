"""Distribution comparison and time aggregation.

Cohen's d with pooled sample standard deviation, a histogram overlapping
coefficient on shared equal-width bins, Pearson correlation, ISO-week
aggregation, and a two-stage split around a pivot date. All functions are
pure; the ComparisonReport bundles the numbers the compare workflow emits
for one measure.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from datetime import date

import numpy as np

from cfpress.errors import DegenerateDistributionError, UndefinedCorrelationError

DEFAULT_OVERLAP_BINS = 100
DEFAULT_STAGE_SPLIT = date(2020, 3, 1)


@dataclass(frozen=True)
class SeriesPoint:
    """Mean of values in one ISO week (week key like '2020-W09')."""

    week: str
    mean: float
    n: int


@dataclass(frozen=True)
class StageStats:
    """Sample statistics for one stage; mean/sd are None when undefined."""

    n: int
    mean: float | None
    sd: float | None

    @property
    def empty(self) -> bool:
        return self.n == 0


@dataclass(frozen=True)
class ComparisonReport:
    """Distribution comparison of one measure between corpus A and corpus B."""

    measure: str
    label_a: str
    label_b: str
    n_a: int
    n_b: int
    cohen_d: float | None
    overlap: float | None
    pearson_r_paired: float | None
    pearson_r_weekly: float | None
    stage_split_date: date
    stages_a: tuple  # (StageStats before split, StageStats at/after split)
    stages_b: tuple


def cohen_d(sample_a, sample_b) -> float:
    """(mean_a - mean_b) / pooled sample SD."""
    a = list(sample_a)
    b = list(sample_b)
    if len(a) < 2 or len(b) < 2:
        raise DegenerateDistributionError("cohen_d needs at least 2 values per sample")
    var_a = statistics.variance(a)
    var_b = statistics.variance(b)
    pooled = math.sqrt(((len(a) - 1) * var_a + (len(b) - 1) * var_b)
                       / (len(a) + len(b) - 2))
    if pooled == 0.0:
        raise DegenerateDistributionError("pooled standard deviation is zero")
    return (statistics.fmean(a) - statistics.fmean(b)) / pooled


def overlap_coefficient(sample_a, sample_b, bins: int = DEFAULT_OVERLAP_BINS) -> float:
    """Histogram overlap sum(min(p_i, q_i)) on shared equal-width bins.

    Bins span the pooled min-max range. Two samples concentrated on one
    identical value overlap fully.
    """
    a = np.asarray(list(sample_a), dtype=float)
    b = np.asarray(list(sample_b), dtype=float)
    if a.size == 0 or b.size == 0:
        raise ValueError("overlap_coefficient needs non-empty samples")
    if bins < 2:
        raise ValueError("overlap_coefficient needs at least 2 bins")
    lo = min(a.min(), b.min())
    hi = max(a.max(), b.max())
    if lo == hi:
        return 1.0
    hist_a, _ = np.histogram(a, bins=bins, range=(lo, hi))
    hist_b, _ = np.histogram(b, bins=bins, range=(lo, hi))
    # sum(min(c_a/n_a, c_b/n_b)) via integer cross-multiplication, so the
    # result is exact up to one final division and identical inputs give 1.0
    n_a = int(hist_a.sum())
    n_b = int(hist_b.sum())
    shared = sum(min(int(c_a) * n_b, int(c_b) * n_a)
                 for c_a, c_b in zip(hist_a, hist_b))
    return shared / (n_a * n_b)


def pearson_r(x, y) -> float:
    """Product-moment correlation of two equal-length samples."""
    xs = np.asarray(list(x), dtype=float)
    ys = np.asarray(list(y), dtype=float)
    if xs.size != ys.size or xs.size < 2:
        raise UndefinedCorrelationError("pearson_r needs equal lengths >= 2")
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    sx = float(np.sqrt((dx * dx).sum()))
    sy = float(np.sqrt((dy * dy).sum()))
    if sx == 0.0 or sy == 0.0:
        raise UndefinedCorrelationError("zero variance input")
    r = float((dx * dy).sum() / (sx * sy))
    return max(-1.0, min(1.0, r))


def week_key(day: date) -> str:
    iso = day.isocalendar()
    return f"{iso[0]}-W{iso[1]:02d}"


def weekly_series(values) -> list:
    """Group (date, value) pairs by ISO week; chronological mean per week."""
    groups = {}
    for day, value in values:
        iso = day.isocalendar()
        groups.setdefault((iso[0], iso[1]), []).append(value)
    series = []
    for (year, week) in sorted(groups):
        members = groups[(year, week)]
        series.append(SeriesPoint(week=f"{year}-W{week:02d}",
                                  mean=statistics.fmean(members),
                                  n=len(members)))
    return series


def _stage_stats(values) -> StageStats:
    n = len(values)
    mean = statistics.fmean(values) if n else None
    sd = statistics.stdev(values) if n >= 2 else None
    return StageStats(n=n, mean=mean, sd=sd)


def stage_split(values, split: date = DEFAULT_STAGE_SPLIT) -> tuple:
    """Partition (date, value) pairs into before-split and at-or-after-split."""
    stage1 = [v for d, v in values if d < split]
    stage2 = [v for d, v in values if d >= split]
    return _stage_stats(stage1), _stage_stats(stage2)


def aligned_weekly_means(values_a, values_b) -> tuple:
    """Weekly means restricted to ISO weeks present in both series."""
    series_a = {p.week: p.mean for p in weekly_series(values_a)}
    series_b = {p.week: p.mean for p in weekly_series(values_b)}
    shared = sorted(set(series_a) & set(series_b))
    return [series_a[w] for w in shared], [series_b[w] for w in shared]


def compare_measure(measure: str, dated_a, dated_b, paired=None,
                    label_a: str = "a", label_b: str = "b",
                    split: date = DEFAULT_STAGE_SPLIT,
                    bins: int = DEFAULT_OVERLAP_BINS) -> ComparisonReport:
    """Assemble a ComparisonReport for one measure.

    dated_a/dated_b are (date, value) pairs per corpus; paired is an optional
    list of (value_a, value_b) for metadata-paired articles. Statistics that
    are undefined on the given samples (degenerate spread, too few points)
    are reported as None rather than failing the whole comparison.
    """
    values_a = [v for _, v in dated_a]
    values_b = [v for _, v in dated_b]

    def attempt(fn, *args):
        try:
            return fn(*args)
        except (DegenerateDistributionError, UndefinedCorrelationError, ValueError):
            return None

    weekly_a, weekly_b = aligned_weekly_means(dated_a, dated_b)
    paired = paired or []
    return ComparisonReport(
        measure=measure,
        label_a=label_a,
        label_b=label_b,
        n_a=len(values_a),
        n_b=len(values_b),
        cohen_d=attempt(cohen_d, values_a, values_b),
        overlap=attempt(overlap_coefficient, values_a, values_b, bins),
        pearson_r_paired=attempt(pearson_r, [p[0] for p in paired],
                                 [p[1] for p in paired]),
        pearson_r_weekly=attempt(pearson_r, weekly_a, weekly_b),
        stage_split_date=split,
        stages_a=stage_split(dated_a, split),
        stages_b=stage_split(dated_b, split),
    )
