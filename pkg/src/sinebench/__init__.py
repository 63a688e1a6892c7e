"""Noisy-periodic-series forecasting benchmark.

Generates sums of sinusoids with exactly known rational frequencies, adds
SNR-calibrated Gaussian noise, and scores FFT-based and autoregressive
forecasters (plus external ones over a line-delimited JSON bridge) against
the held-out tail of each series.
"""

__version__ = "0.1.0"

from .rational import Rational, denominator_lcm, fundamental_period, reduce
from .signals import (
    SampledSeries,
    SignalSpec,
    SineComponent,
    calibrate_noise_sigma,
    clean_signal,
    sample_signal,
)
from .dataset import (
    AMPLITUDE_RANGE,
    CONTEXT_LENGTH,
    DRAWS_PER_CELL,
    HORIZON,
    N_VALUES,
    SAMPLING_RATIOS,
    SNR_DB_VALUES,
    GridPoint,
    draw_components,
    draw_spec,
    generate_dataset,
    iter_dataset,
    series_id,
    write_dataset_csv,
)
from .fft_forecaster import (
    RecoveredComponent,
    extract_components,
    forecast_fft,
    hann_window,
)
from .ar_forecaster import ArModel, aic_grid, fit_ar, forecast_ar, select_order
from .metrics import (
    BoxplotStats,
    ForecastRecord,
    Metrics,
    SummaryTable,
    aggregate,
    boxplot_stats,
    compute_metrics,
)
from .bridge import BridgeClient, BridgeInfo, ForecastRejected, ProtocolError
from .harness import (
    ModelSpec,
    RunConfig,
    RunResult,
    read_results_csv,
    run_benchmark,
    run_manifest,
    write_results_csv,
    write_run_manifest,
)
from .reporting import write_report

__all__ = [
    "__version__",
    "Rational",
    "reduce",
    "fundamental_period",
    "denominator_lcm",
    "SineComponent",
    "SignalSpec",
    "SampledSeries",
    "calibrate_noise_sigma",
    "clean_signal",
    "sample_signal",
    "N_VALUES",
    "SNR_DB_VALUES",
    "SAMPLING_RATIOS",
    "DRAWS_PER_CELL",
    "CONTEXT_LENGTH",
    "HORIZON",
    "AMPLITUDE_RANGE",
    "GridPoint",
    "series_id",
    "draw_components",
    "draw_spec",
    "iter_dataset",
    "generate_dataset",
    "write_dataset_csv",
    "hann_window",
    "RecoveredComponent",
    "extract_components",
    "forecast_fft",
    "ArModel",
    "fit_ar",
    "aic_grid",
    "select_order",
    "forecast_ar",
    "Metrics",
    "ForecastRecord",
    "compute_metrics",
    "SummaryTable",
    "aggregate",
    "BoxplotStats",
    "boxplot_stats",
    "BridgeClient",
    "BridgeInfo",
    "ProtocolError",
    "ForecastRejected",
    "ModelSpec",
    "RunConfig",
    "RunResult",
    "run_benchmark",
    "write_results_csv",
    "read_results_csv",
    "run_manifest",
    "write_run_manifest",
    "write_report",
]
