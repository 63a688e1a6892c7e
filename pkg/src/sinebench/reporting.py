"""Report generation: summary tables, per-dimension breakdowns, boxplots.

Everything is derived from a results CSV (plus the sibling run manifest for
the period summary) and written as CSV-plus-SVG pairs, so every plotted
number exists in machine-readable form next to its figure.
"""

import csv
import json
import os
from typing import Sequence

import numpy as np

from .dataset import iter_cells
from .harness import read_results_csv
from .metrics import ForecastRecord, aggregate, boxplot_stats
from .plots import box_chart, line_chart
from .rational import denominator_lcm, fundamental_period

BREAKDOWN_DIMS = (
    ("n_components", "N", "number of components"),
    ("snr_db", "snr", "SNR (dB)"),
    ("sampling_ratio", "ratio", "sampling ratio"),
)

BOX_METRICS = ("mse", "mae", "mase", "r2")

LINE_METRICS = ("mse", "mae")


def _write_csv(path, header: Sequence[str], rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _num(v: float) -> str:
    return "" if v is None or not np.isfinite(v) else repr(float(v))


def _models_in(records: list[ForecastRecord]) -> list[str]:
    seen = []
    for rec in records:
        if rec.model not in seen:
            seen.append(rec.model)
    return seen


def _summary_csv(records, sets, models, out_dir) -> str:
    """Mean/median MSE per (set, model), the headline comparison table."""
    mean_t = aggregate(records, ("set_label", "model"), "mean")
    median_t = aggregate(records, ("set_label", "model"), "median")
    mean_rows = {row.key: row for row in mean_t.rows}
    median_rows = {row.key: row for row in median_t.rows}
    rows = []
    for set_label in sets:
        for model in models:
            key = (set_label, model)
            if key not in mean_rows:
                continue
            mrow, drow = mean_rows[key], median_rows[key]
            rows.append(
                [
                    set_label,
                    model,
                    _num(mrow.values["mse"]),
                    _num(drow.values["mse"]),
                    mrow.used["mse"],
                    mrow.n_records - mrow.used["mse"],
                ]
            )
    path = os.path.join(out_dir, "summary_mse.csv")
    _write_csv(
        path, ["set", "model", "mean_mse", "median_mse", "n_used", "n_excluded"], rows
    )
    return path


def _breakdowns(records, sets, models, out_dir) -> list[str]:
    written = []
    for set_label in sets:
        subset = [r for r in records if r.set_label == set_label]
        if not subset:
            continue
        for metric in LINE_METRICS:
            for statistic in ("mean", "median"):
                for dim_field, dim_tag, dim_label in BREAKDOWN_DIMS:
                    table = aggregate(subset, ("model", dim_field), statistic)
                    dim_values = sorted({row.key[1] for row in table.rows})
                    cell = {row.key: row.values[metric] for row in table.rows}
                    series = [
                        (model, [cell.get((model, v), float("nan")) for v in dim_values])
                        for model in models
                    ]
                    stem = f"lines_{set_label}_{metric}_{statistic}_by_{dim_tag}"
                    csv_path = os.path.join(out_dir, stem + ".csv")
                    _write_csv(
                        csv_path,
                        [dim_tag] + models,
                        [
                            [f"{v:g}"] + [_num(vals[i]) for _, vals in series]
                            for i, v in enumerate(dim_values)
                        ],
                    )
                    svg_path = os.path.join(out_dir, stem + ".svg")
                    svg = line_chart(
                        f"set {set_label}: {statistic} {metric.upper()} by {dim_label}",
                        dim_label,
                        f"{statistic} {metric.upper()}",
                        [f"{v:g}" for v in dim_values],
                        series,
                        log_y=True,
                    )
                    with open(svg_path, "w", newline="\n") as fh:
                        fh.write(svg)
                    written += [csv_path, svg_path]
    return written


def _boxplots(records, sets, models, out_dir) -> list[str]:
    written = []
    for set_label in sets:
        subset = [r for r in records if r.set_label == set_label]
        if not subset:
            continue
        for metric in BOX_METRICS:
            items = []
            outlier_rows = []
            stat_rows = []
            for model in models:
                vals = np.array(
                    [
                        getattr(r.metrics, metric)
                        for r in subset
                        if r.model == model and r.metrics is not None
                    ]
                )
                finite = vals[np.isfinite(vals)]
                if len(finite) == 0:
                    continue
                stats = boxplot_stats(finite)
                items.append((model, stats))
                stat_rows.append(
                    [
                        model,
                        _num(stats.q1),
                        _num(stats.median),
                        _num(stats.q3),
                        _num(stats.whisker_low),
                        _num(stats.whisker_high),
                        stats.n,
                        len(vals) - len(finite),
                        len(stats.outliers),
                    ]
                )
                outlier_rows += [[model, repr(v)] for v in stats.outliers.tolist()]
            if not items:
                continue
            stem = f"box_{set_label}_{metric}"
            csv_path = os.path.join(out_dir, stem + ".csv")
            _write_csv(
                csv_path,
                [
                    "model",
                    "q1",
                    "median",
                    "q3",
                    "whisker_low",
                    "whisker_high",
                    "n",
                    "n_excluded",
                    "n_outliers",
                ],
                stat_rows,
            )
            out_path = os.path.join(out_dir, stem + "_outliers.csv")
            _write_csv(out_path, ["model", "value"], outlier_rows)
            svg_path = os.path.join(out_dir, stem + ".svg")
            svg = box_chart(
                f"set {set_label}: {metric.upper()} distribution",
                metric.upper(),
                items,
                log_y=metric in ("mse", "mae"),
            )
            with open(svg_path, "w", newline="\n") as fh:
                fh.write(svg)
            written += [csv_path, out_path, svg_path]
    return written


def _period_summary(manifest: dict, out_dir: str) -> str:
    """Exact-period statistics per set, from the run's generation parameters.

    Reports both the exact fundamental period and the cruder
    lcm-of-denominators figure, plus how often the period outruns the
    context window at each series' own sampling rate.
    """
    grid = manifest["grid"]
    rows = []
    for set_label in manifest["sets"]:
        periods = []
        den_lcms = []
        exceed = 0
        total = 0
        for n, draw, components in iter_cells(
            set_label,
            manifest["master_seed"],
            n_values=grid["n_values"],
            draws_per_cell=grid["draws_per_cell"],
        ):
            freqs = [c.frequency for c in components]
            period = fundamental_period(freqs)
            periods.append(float(period))
            den_lcms.append(float(denominator_lcm(freqs)))
            f_max = max(freqs)
            for ratio in grid["sampling_ratios"]:
                # context duration in seconds at this cell's sampling rate
                duration = grid["context_length"] / (ratio * float(f_max))
                total += 1
                if float(period) > duration:
                    exceed += 1
        rows.append(
            [
                set_label,
                len(periods),
                _num(float(np.median(periods))),
                _num(float(np.min(periods))),
                _num(float(np.max(periods))),
                _num(float(np.median(den_lcms))),
                _num(exceed / total if total else float("nan")),
            ]
        )
    path = os.path.join(out_dir, "period_summary.csv")
    _write_csv(
        path,
        [
            "set",
            "n_cells",
            "median_period_s",
            "min_period_s",
            "max_period_s",
            "median_denominator_lcm_s",
            "frac_period_gt_context",
        ],
        rows,
    )
    return path


def write_report(results_path, out_dir, manifest_path=None) -> list[str]:
    """Build the full report next to the results; returns written paths."""
    records = read_results_csv(results_path)
    os.makedirs(out_dir, exist_ok=True)
    sets = sorted({r.set_label for r in records})
    models = _models_in(records)

    written = [_summary_csv(records, sets, models, out_dir)]
    written += _breakdowns(records, sets, models, out_dir)
    written += _boxplots(records, sets, models, out_dir)

    if manifest_path is None:
        candidate = os.path.join(os.path.dirname(os.path.abspath(results_path)),
                                 "run_manifest.json")
        manifest_path = candidate if os.path.exists(candidate) else None
    if manifest_path is not None:
        with open(manifest_path) as fh:
            manifest = json.load(fh)
        written.append(_period_summary(manifest, out_dir))
    return written
