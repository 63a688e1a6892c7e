"""Cross-language bridge check: the TypeScript naive adapter vs in-process.

Skipped unless ``bridge/dist`` has been built (``cd bridge && npm install &&
npm run build``).  The wire carries shortest-round-trip decimals on both
sides, so the comparison below is essentially exact; the 1e-12 relative
budget is slack for it.
"""

import itertools
from pathlib import Path

import numpy as np
import pytest

import conftest

from sinebench.bridge import BridgeClient
from sinebench.dataset import iter_dataset, series_id
from sinebench.harness import ModelSpec, RunConfig, run_benchmark
from sinebench.metrics import compute_metrics

ADAPTER = Path(__file__).resolve().parent.parent / "bridge" / "dist" / "naive_main.js"

pytestmark = pytest.mark.skipif(
    not ADAPTER.exists(), reason="bridge/dist not built (cd bridge && npm run build)"
)


def criterion(num: int, ok: bool, detail: str):
    line = f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'}: {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print("\n" + line)
    assert ok, f"criterion {num:02d}: {detail}"


def test_criterion_10_bridge_equivalence():
    """Adapter-served naive matches in-process naive to 1e-12 relative on
    100 series, and a full-grid-sized serial session raises zero protocol
    errors."""
    subset = list(itertools.islice(iter_dataset("A", 0), 100))

    worst = 0.0
    with BridgeClient(["node", str(ADAPTER)]) as client:
        for point, spec, series in subset:
            values = client.forecast(
                series_id(point),
                series.context.tolist(),
                len(series.truth),
                spec.sample_interval,
            )
            local = np.full(len(series.truth), series.context[-1])
            remote = compute_metrics(np.asarray(values), series.truth, series.context)
            direct = compute_metrics(local, series.truth, series.context)
            for name in ("mse", "mae", "mase", "r2"):
                a, b = getattr(remote, name), getattr(direct, name)
                if np.isnan(a) and np.isnan(b):
                    continue
                rel = abs(a - b) / max(abs(b), 1e-300)
                worst = max(worst, rel)

        # Keep the same process alive for the rest of a 5,040-request
        # session; any protocol slip would raise out of forecast().
        horizon = len(subset[0][2].truth)
        context = subset[0][2].context.tolist()
        for i in range(5040 - len(subset)):
            client.forecast(f"fill-{i}", context, horizon, 0.01)

    ok = worst <= 1e-12
    criterion(
        10,
        ok,
        f"bridge naive vs in-process naive: worst metric rel diff {worst:.1e} "
        f"(<= 1e-12) over 100 series; 5040-request session, zero protocol errors",
    )


def test_harness_runs_bridge_adapter_end_to_end():
    """The harness drives the TS adapter like any roster model and scores
    identically to the built-in naive forecaster."""
    config = RunConfig(
        master_seed=3,
        sets=("B",),
        n_values=(1, 2),
        draws_per_cell=1,
        snr_values=(10.0,),
        ratio_values=(2.5, 10.0),
        models=(
            ModelSpec("naive"),
            ModelSpec("ts-naive", command=f"node {ADAPTER}"),
        ),
    )
    result = run_benchmark(config)
    assert result.failures == []
    by_model = {}
    for rec in result.records:
        assert rec.error is None
        by_model.setdefault(rec.model, []).append(rec)
    assert len(by_model["naive"]) == len(by_model["ts-naive"]) == 4
    for a, b in zip(by_model["naive"], by_model["ts-naive"]):
        assert a.series_id == b.series_id
        assert a.metrics.mse == pytest.approx(b.metrics.mse, rel=1e-12)
        assert a.metrics.mase == pytest.approx(b.metrics.mase, rel=1e-12)
