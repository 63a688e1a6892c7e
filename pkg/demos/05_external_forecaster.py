"""
Plugging an external forecaster into the benchmark
==================================================

Forecasters do not have to live in this package, or even in Python.  An
adapter is any executable that speaks newline-delimited JSON on stdio:
say hello, then answer forecast requests until told to shut down.  Here
we write a tiny seasonal-naive adapter to a temp file, talk to it directly
through ``BridgeClient``, and then let the harness score it on a reduced
grid next to the built-ins.
"""

import os
import shutil
import sys
import tempfile

import numpy as np

from sinebench import BridgeClient, ModelSpec, RunConfig, aggregate, run_benchmark

# The adapter below repeats the last ``period`` context values, with the
# period chosen by autocorrelation -- about ten lines of actual logic, and
# none of them import this package.
ADAPTER = r'''
import json, sys

print(json.dumps({"type": "hello", "name": "seasonal-naive", "version": "1.0"}),
      flush=True)
for line in sys.stdin:
    msg = json.loads(line)
    if msg["type"] == "shutdown":
        break
    ctx, horizon = msg["context"], msg["horizon"]
    n = len(ctx)
    mean = sum(ctx) / n
    c = [v - mean for v in ctx]
    den = sum(v * v for v in c) or 1.0
    best, period = -1.0, 1
    for lag in range(2, n // 2):
        num = sum(c[i] * c[i - lag] for i in range(lag, n))
        if num / den > best:
            best, period = num / den, lag
    values = [ctx[n - period + (k % period)] for k in range(horizon)]
    print(json.dumps({"type": "forecast_result", "id": msg["id"],
                      "values": values}), flush=True)
'''

tmp = tempfile.mkdtemp(prefix="sinebench_adapter_")
adapter_path = os.path.join(tmp, "seasonal_naive.py")
with open(adapter_path, "w") as fh:
    fh.write(ADAPTER)
command = f"{sys.executable} {adapter_path}"

# Talk to it by hand first.  One process, serial requests, exact floats.
client = BridgeClient(command)
print(f"adapter says hello: {client.info.name} {client.info.version}")

t = np.arange(96)
context = np.sin(2 * np.pi * t / 12)
values = client.forecast("demo-1", context.tolist(), 24, 1.0)
err = float(np.max(np.abs(np.asarray(values) - np.sin(2 * np.pi * (96 + np.arange(24)) / 12))))
print(f"period-12 tone, 24-step forecast, max abs error {err:.2e}")
client.shutdown()

# Now the harness drives the same adapter across a small grid.  External
# models are just roster entries with a launch command.
config = RunConfig(
    master_seed=0,
    sets=("A",),
    n_values=(1, 3),
    draws_per_cell=2,
    snr_values=(10.0, 30.0),
    ratio_values=(2.5, 10.0),
    models=(
        ModelSpec("fft"),
        ModelSpec("ar"),
        ModelSpec("seasonal", command=command),
    ),
)
result = run_benchmark(config)
print(f"\nscored {len(result.records)} records "
      f"({len(result.records) // 3} series x 3 models)")

table = aggregate(result.records, ("model",), "median")
print("median MSE over the grid:")
for row in table.rows:
    print(f"  {row.key[0]:9s} {row.values['mse']:.4f}")

shutil.rmtree(tmp)
