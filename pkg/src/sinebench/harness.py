"""Benchmark harness: generate the grid, run every forecaster, write results.

Built-in forecasters run in-process (optionally fanned out over worker
processes); external ones are driven serially through the stdio bridge.  A
forecaster failure on one series becomes an error row and the run continues;
a wire-protocol violation cancels the rest of that forecaster's work, error
rows included, and is surfaced to the CLI as exit code 3.
"""

import concurrent.futures
import csv
import hashlib
import json
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .ar_forecaster import forecast_ar, select_order
from .bridge import BridgeClient, ForecastRejected, ProtocolError
from .dataset import (
    CONTEXT_LENGTH,
    DRAWS_PER_CELL,
    HORIZON,
    N_VALUES,
    SAMPLING_RATIOS,
    SNR_DB_VALUES,
    GridPoint,
    iter_dataset,
    series_id,
)
from .fft_forecaster import DEFAULT_THRESHOLD, forecast_fft
from .metrics import ForecastRecord, Metrics, compute_metrics

RESULTS_COLUMNS = (
    "series_id",
    "set",
    "model",
    "N",
    "snr_db",
    "sampling_ratio",
    "mse",
    "mae",
    "mase",
    "r2",
    "error",
)

BUILTIN_MODELS = ("fft", "ar", "naive")


@dataclass(frozen=True)
class ModelSpec:
    """A roster entry: a built-in name, or any id plus an adapter command."""

    model_id: str
    command: str | None = None

    def __post_init__(self):
        if self.command is None and self.model_id not in BUILTIN_MODELS:
            raise ValueError(
                f"unknown built-in forecaster {self.model_id!r}; "
                f"available: {BUILTIN_MODELS}"
            )


@dataclass
class RunConfig:
    master_seed: int = 0
    sets: tuple[str, ...] = ("A", "B")
    n_values: tuple[int, ...] = N_VALUES
    draws_per_cell: int = DRAWS_PER_CELL
    snr_values: tuple[float, ...] = SNR_DB_VALUES
    ratio_values: tuple[float, ...] = SAMPLING_RATIOS
    context_length: int = CONTEXT_LENGTH
    horizon: int = HORIZON
    models: tuple[ModelSpec, ...] = (ModelSpec("fft"), ModelSpec("ar"))
    threshold_fraction: float = DEFAULT_THRESHOLD
    max_order: int = 128
    jobs: int = 1
    bridge_timeout: float = 60.0

    def grid_kwargs(self) -> dict:
        return dict(
            n_values=self.n_values,
            draws_per_cell=self.draws_per_cell,
            snr_values=self.snr_values,
            ratio_values=self.ratio_values,
            context_length=self.context_length,
            horizon=self.horizon,
        )


@dataclass
class RunResult:
    records: list[ForecastRecord]
    failures: list[tuple[str, str]] = field(default_factory=list)
    elapsed_seconds: float = 0.0


def builtin_forecaster(
    model_id: str, threshold_fraction: float = DEFAULT_THRESHOLD, max_order: int = 128
) -> Callable[[np.ndarray, int, float], np.ndarray]:
    if model_id == "fft":
        return lambda context, horizon, dt: forecast_fft(
            context, horizon, threshold_fraction
        )
    if model_id == "ar":
        return lambda context, horizon, dt: forecast_ar(
            select_order(context, max_order), context, horizon
        )
    if model_id == "naive":
        return lambda context, horizon, dt: np.full(horizon, float(context[-1]))
    raise ValueError(f"unknown built-in forecaster {model_id!r}")


def _record(point: GridPoint, model_id: str, metrics=None, error=None) -> ForecastRecord:
    return ForecastRecord(
        series_id=series_id(point),
        set_label=point.set_label,
        model=model_id,
        n_components=point.n_components,
        snr_db=point.snr_db,
        sampling_ratio=point.sampling_ratio,
        metrics=metrics,
        error=error,
    )


def _score(point, model_id, values, series) -> ForecastRecord:
    values = np.asarray(values, dtype=float)
    if values.shape != (series.horizon,):
        return _record(point, model_id, error="wrong horizon length")
    if not np.all(np.isfinite(values)):
        return _record(point, model_id, error="non-finite forecast values")
    metrics = compute_metrics(series.truth, values, series.context)
    return _record(point, model_id, metrics=metrics)


def _forecast_chunk(args):
    """Worker-side scoring of a slice of series for one built-in model."""
    model_id, threshold, max_order, chunk = args
    fn = builtin_forecaster(model_id, threshold, max_order)
    out = []
    for context, truth, horizon, dt in chunk:
        try:
            values = np.asarray(fn(context, horizon, dt), dtype=float)
        except Exception as exc:  # isolate per-series crashes
            out.append(("error", f"{type(exc).__name__}: {exc}"))
            continue
        if values.shape != (horizon,):
            out.append(("error", "wrong horizon length"))
        elif not np.all(np.isfinite(values)):
            out.append(("error", "non-finite forecast values"))
        else:
            out.append(("ok", values))
    return out


def _run_builtin(model, dataset, config) -> list[ForecastRecord]:
    fn = builtin_forecaster(model.model_id, config.threshold_fraction, config.max_order)
    records = []
    if config.jobs <= 1:
        for point, spec, series in dataset:
            try:
                values = fn(series.context, series.horizon, series.sample_interval)
            except Exception as exc:
                records.append(
                    _record(point, model.model_id, error=f"{type(exc).__name__}: {exc}")
                )
                continue
            records.append(_score(point, model.model_id, values, series))
        return records

    payload = [
        (s.context, s.truth, s.horizon, s.sample_interval) for _, _, s in dataset
    ]
    n_chunks = max(1, min(len(payload), config.jobs * 4))
    bounds = np.linspace(0, len(payload), n_chunks + 1).astype(int)
    tasks = [
        (model.model_id, config.threshold_fraction, config.max_order,
         payload[a:b])
        for a, b in zip(bounds[:-1], bounds[1:])
        if b > a
    ]
    with concurrent.futures.ProcessPoolExecutor(max_workers=config.jobs) as pool:
        chunk_results = list(pool.map(_forecast_chunk, tasks))
    flat = [item for chunk in chunk_results for item in chunk]
    for (point, spec, series), (status, value) in zip(dataset, flat):
        if status == "error":
            records.append(_record(point, model.model_id, error=value))
        else:
            records.append(_score(point, model.model_id, value, series))
    return records


def _run_external(model, dataset, config) -> tuple[list[ForecastRecord], str | None]:
    """Drive one adapter serially.  Returns (records, violation reason or None)."""
    records: list[ForecastRecord] = []
    violation: str | None = None
    try:
        client = BridgeClient(model.command, timeout=config.bridge_timeout)
    except ProtocolError as exc:
        reason = str(exc)
        return (
            [
                _record(p, model.model_id, error=f"bridge protocol violation: {reason}")
                for p, _, _ in dataset
            ],
            reason,
        )
    try:
        for i, (point, spec, series) in enumerate(dataset):
            try:
                values = client.forecast(
                    series_id(point),
                    series.context,
                    series.horizon,
                    series.sample_interval,
                )
            except ForecastRejected as exc:
                records.append(_record(point, model.model_id, error=exc.reason))
                continue
            except ProtocolError as exc:
                violation = str(exc)
                # Cancel remaining work; keep one row per series regardless.
                for later, _, _ in dataset[i:]:
                    records.append(
                        _record(
                            later,
                            model.model_id,
                            error=f"bridge protocol violation: {violation}",
                        )
                    )
                break
            records.append(_score(point, model.model_id, values, series))
    finally:
        client.shutdown()
    return records, violation


def run_benchmark(config: RunConfig, log: Callable[[str], None] | None = None) -> RunResult:
    """Score every roster model on every grid series.

    Records preserve roster-then-grid order, which together with the
    deterministic generator makes the emitted CSV byte-stable.
    """
    start = time.perf_counter()
    dataset = []
    for set_label in config.sets:
        dataset.extend(
            iter_dataset(set_label, config.master_seed, **config.grid_kwargs())
        )
    if log:
        log(f"generated {len(dataset)} series across sets {','.join(config.sets)}")

    records: list[ForecastRecord] = []
    failures: list[tuple[str, str]] = []
    for model in config.models:
        model_start = time.perf_counter()
        if model.command is None:
            records.extend(_run_builtin(model, dataset, config))
        else:
            ext_records, violation = _run_external(model, dataset, config)
            records.extend(ext_records)
            if violation is not None:
                failures.append((model.model_id, violation))
        if log:
            log(
                f"model {model.model_id}: {len(dataset)} series in "
                f"{time.perf_counter() - model_start:.1f} s"
            )
    return RunResult(
        records=records,
        failures=failures,
        elapsed_seconds=time.perf_counter() - start,
    )


def _csv_value(v: float) -> str:
    return "" if not np.isfinite(v) else repr(float(v))


def write_results_csv(path, records: Sequence[ForecastRecord]) -> str:
    """Write scored records; returns the file's sha256 hex digest."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULTS_COLUMNS)
        for rec in records:
            base = [
                rec.series_id,
                rec.set_label,
                rec.model,
                rec.n_components,
                f"{rec.snr_db:g}",
                f"{rec.sampling_ratio:g}",
            ]
            if rec.metrics is not None:
                m = rec.metrics
                row = base + [
                    repr(m.mse),
                    repr(m.mae),
                    _csv_value(m.mase),
                    _csv_value(m.r2),
                    "",
                ]
            else:
                row = base + ["", "", "", "", rec.error]
            writer.writerow(row)
    sha = hashlib.sha256()
    with open(path, "rb") as fh:
        sha.update(fh.read())
    return sha.hexdigest()


def read_results_csv(path) -> list[ForecastRecord]:
    records = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != RESULTS_COLUMNS:
            raise ValueError(f"unexpected results columns in {path}: {reader.fieldnames}")
        for row in reader:
            common = dict(
                series_id=row["series_id"],
                set_label=row["set"],
                model=row["model"],
                n_components=int(row["N"]),
                snr_db=float(row["snr_db"]),
                sampling_ratio=float(row["sampling_ratio"]),
            )
            if row["error"]:
                records.append(ForecastRecord(**common, error=row["error"]))
            else:
                records.append(
                    ForecastRecord(
                        **common,
                        metrics=Metrics(
                            mse=float(row["mse"]),
                            mae=float(row["mae"]),
                            mase=float(row["mase"]) if row["mase"] else float("nan"),
                            r2=float(row["r2"]) if row["r2"] else float("nan"),
                        ),
                    )
                )
    return records


def run_manifest(config: RunConfig, result: RunResult, results_sha256: str) -> dict:
    return {
        "tool": "sinebench",
        "version": __version__,
        "master_seed": config.master_seed,
        "sets": list(config.sets),
        "grid": {
            "n_values": list(config.n_values),
            "draws_per_cell": config.draws_per_cell,
            "snr_db": [float(s) for s in config.snr_values],
            "sampling_ratios": [float(r) for r in config.ratio_values],
            "context_length": config.context_length,
            "horizon": config.horizon,
        },
        "models": [
            {"model_id": m.model_id, "command": m.command} for m in config.models
        ],
        "threshold_fraction": config.threshold_fraction,
        "max_order": config.max_order,
        "record_count": len(result.records),
        "error_count": sum(1 for r in result.records if r.error is not None),
        "protocol_failures": [
            {"model_id": m, "reason": r} for m, r in result.failures
        ],
        "results_sha256": results_sha256,
    }


def write_run_manifest(path, manifest: dict):
    with open(path, "w", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
