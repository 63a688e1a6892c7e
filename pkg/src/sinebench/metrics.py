"""Forecast scoring and aggregation.

Point metrics compare a forecast with the held-out truth; MASE additionally
uses the context's in-sample one-step naive errors as its scale.  Metrics
that are undefined for a series (constant context, zero-variance truth) are
carried as NaN and excluded from aggregates with the exclusion counted.
"""

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

METRIC_NAMES = ("mse", "mae", "mase", "r2")

GROUPABLE_FIELDS = ("set_label", "model", "n_components", "snr_db", "sampling_ratio")

STATISTICS = ("mean", "median")


class Metrics(NamedTuple):
    mse: float
    mae: float
    mase: float  # NaN when the context is constant
    r2: float    # NaN when the truth has zero variance


@dataclass(frozen=True)
class ForecastRecord:
    """One scored (series, model) pair; ``error`` marks a failed forecast."""

    series_id: str
    set_label: str
    model: str
    n_components: int
    snr_db: float
    sampling_ratio: float
    metrics: Metrics | None = None
    error: str | None = None

    def __post_init__(self):
        if (self.metrics is None) == (self.error is None):
            raise ValueError("exactly one of metrics and error must be set")


def compute_metrics(
    truth: np.ndarray, forecast: np.ndarray, context: np.ndarray
) -> Metrics:
    """MSE, MAE, MASE and R^2 of a forecast against the truth.

    The MASE scale is the mean absolute one-step difference of the context;
    R^2 is 1 - SSE/SST with SST centered on the truth's own mean.
    """
    truth = np.asarray(truth, dtype=float)
    forecast = np.asarray(forecast, dtype=float)
    context = np.asarray(context, dtype=float)
    if truth.shape != forecast.shape:
        raise ValueError(
            f"truth and forecast lengths differ: {truth.shape} vs {forecast.shape}"
        )
    if truth.ndim != 1 or len(truth) == 0:
        raise ValueError("truth must be a non-empty 1-D array")
    if len(context) < 2:
        raise ValueError("context must hold at least two values")
    # Forecasters must not emit NaN/Inf; scoring them would silently poison
    # aggregates, so reject here.
    if not np.all(np.isfinite(forecast)):
        raise ValueError("forecast contains non-finite values")
    if not np.all(np.isfinite(truth)) or not np.all(np.isfinite(context)):
        raise ValueError("truth and context must be finite")

    err = forecast - truth
    mse = float(np.mean(err**2))
    mae = float(np.mean(np.abs(err)))

    scale = float(np.mean(np.abs(np.diff(context))))
    mase = mae / scale if scale > 0.0 else float("nan")

    sst = float(np.sum((truth - truth.mean()) ** 2))
    r2 = 1.0 - float(np.sum(err**2)) / sst if sst > 0.0 else float("nan")
    return Metrics(mse=mse, mae=mae, mase=mase, r2=r2)


@dataclass(frozen=True)
class SummaryRow:
    key: tuple
    n_records: int
    values: dict
    used: dict

    def excluded(self, metric: str) -> int:
        return self.n_records - self.used[metric]


@dataclass(frozen=True)
class SummaryTable:
    group_keys: tuple
    statistic: str
    rows: list = field(default_factory=list)


def aggregate(
    records: Iterable[ForecastRecord],
    group_keys: Sequence[str],
    statistic: str = "mean",
) -> SummaryTable:
    """Group records and reduce each metric with mean or median.

    Error records and NaN metrics are excluded per metric; ``used`` counts
    how many records actually contributed.  Rows come out sorted by key.
    """
    group_keys = tuple(group_keys)
    for key in group_keys:
        if key not in GROUPABLE_FIELDS:
            raise ValueError(f"cannot group by {key!r}; choose from {GROUPABLE_FIELDS}")
    if statistic not in STATISTICS:
        raise ValueError(f"statistic must be one of {STATISTICS}, got {statistic!r}")
    reducer = np.mean if statistic == "mean" else np.median

    groups: dict[tuple, list[ForecastRecord]] = {}
    for rec in records:
        key = tuple(getattr(rec, k) for k in group_keys)
        groups.setdefault(key, []).append(rec)

    rows = []
    for key in sorted(groups):
        members = groups[key]
        values = {}
        used = {}
        for metric in METRIC_NAMES:
            vals = np.array(
                [
                    getattr(rec.metrics, metric)
                    for rec in members
                    if rec.metrics is not None
                ]
            )
            finite = vals[np.isfinite(vals)] if len(vals) else vals
            used[metric] = int(len(finite))
            values[metric] = float(reducer(finite)) if len(finite) else float("nan")
        rows.append(SummaryRow(key=key, n_records=len(members), values=values, used=used))
    return SummaryTable(group_keys=group_keys, statistic=statistic, rows=rows)


@dataclass(frozen=True, eq=False)
class BoxplotStats:
    q1: float
    median: float
    q3: float
    whisker_low: float
    whisker_high: float
    outliers: np.ndarray
    n: int


def boxplot_stats(values: Iterable[float]) -> BoxplotStats:
    """Quartiles, 1.5 IQR whiskers clamped to data, and outliers.

    Quartiles use linear interpolation (type 7).  Each whisker sits at the
    most extreme value still within 1.5 IQR of its quartile; values beyond
    are outliers.  A singleton collapses everything onto the single value.
    """
    vals = np.asarray(list(values), dtype=float)
    if len(vals) == 0:
        raise ValueError("boxplot_stats needs at least one value")
    if not np.all(np.isfinite(vals)):
        raise ValueError("values must be finite; filter NaN before plotting")
    q1, med, q3 = np.percentile(vals, [25.0, 50.0, 75.0])
    iqr = q3 - q1
    lo_fence = q1 - 1.5 * iqr
    hi_fence = q3 + 1.5 * iqr
    inside = vals[(vals >= lo_fence) & (vals <= hi_fence)]
    # Fences always contain the quartiles, so ``inside`` cannot be empty.
    whisker_low = float(inside.min())
    whisker_high = float(inside.max())
    outliers = np.sort(vals[(vals < lo_fence) | (vals > hi_fence)])
    return BoxplotStats(
        q1=float(q1),
        median=float(med),
        q3=float(q3),
        whisker_low=whisker_low,
        whisker_high=whisker_high,
        outliers=outliers,
        n=int(len(vals)),
    )
