"""Benchmark dataset: two families of noisy periodic series on a fixed grid.

Set A draws an integer base frequency and stacks exact harmonics, so periods
stay at or below one second.  Set B draws distinct reduced rationals a/b,
whose lcm-of-denominator periods explode combinatorially with N.

Every (N, draw) cell shares one amplitude/frequency draw across the whole
SNR x sampling-ratio sub-grid, matching the benchmark design of varying noise
and sampling against a fixed underlying signal.
"""

import hashlib
import json
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from . import __version__
from .signals import SampledSeries, SignalSpec, SineComponent, sample_signal

N_VALUES = (1, 2, 3, 5, 8, 12, 20)
SNR_DB_VALUES = (2, 5, 10, 15, 20, 30)
SAMPLING_RATIOS = (2.1, 2.5, 3, 5, 10, 20)
DRAWS_PER_CELL = 20
CONTEXT_LENGTH = 512
HORIZON = 64

AMPLITUDE_RANGE = (0.5, 5.0)
SET_A_F1_RANGE = (1, 20)        # integer base frequency, Hz
SET_B_MAX_INTEGER = 200         # numerators and denominators drawn on 1..200

_SET_CODES = {"A": 0, "B": 1}
_COMPONENT_STREAM = 0
_NOISE_STREAM = 1

DATASET_COLUMNS = (
    "series_id",
    "set",
    "N",
    "draw_index",
    "snr_db",
    "sampling_ratio",
    "sample_interval",
    "t_index",
    "value",
)


class GridPoint(NamedTuple):
    set_label: str
    n_components: int
    draw_index: int
    snr_db: float
    sampling_ratio: float


def series_id(point: GridPoint) -> str:
    return (
        f"{point.set_label}_n{point.n_components:02d}_d{point.draw_index:02d}"
        f"_snr{point.snr_db:g}_r{point.sampling_ratio:g}"
    )


def _spawn_int(value: float, scale: int) -> int:
    # Spawn keys must be non-negative integers; scaled two's-complement wrap.
    return round(value * scale) % 2**63


def component_seed_sequence(
    master_seed: int, set_label: str, n_components: int, draw_index: int
) -> np.random.SeedSequence:
    """Stream for the amplitude/frequency draw of one (set, N, draw) cell."""
    return np.random.SeedSequence(
        master_seed,
        spawn_key=(_SET_CODES[set_label], _COMPONENT_STREAM, n_components, draw_index),
    )


def noise_seed(
    master_seed: int,
    set_label: str,
    n_components: int,
    draw_index: int,
    snr_db: float,
    sampling_ratio: float,
) -> int:
    """64-bit noise seed for one series, derived from its grid coordinates.

    Keyed by grid values rather than positions, so a series keeps its seed
    under grid overrides and can be regenerated in isolation.
    """
    ss = np.random.SeedSequence(
        master_seed,
        spawn_key=(
            _SET_CODES[set_label],
            _NOISE_STREAM,
            n_components,
            draw_index,
            _spawn_int(snr_db, 100),
            _spawn_int(sampling_ratio, 1000),
        ),
    )
    return int(ss.generate_state(1, np.uint64)[0])


def draw_components(
    set_label: str, n_components: int, rng: np.random.Generator
) -> tuple[SineComponent, ...]:
    """Draw amplitudes and frequencies for one cell; phases stay zero.

    Set A: f_n = n * f1 with f1 an integer uniform on 1..20.
    Set B: N distinct reduced rationals a/b, a and b uniform on 1..200,
    collisions resampled.  Amplitudes are uniform on [0.5, 5.0] and are
    paired with the frequencies in ascending frequency order.
    """
    if n_components < 1:
        raise ValueError("n_components must be >= 1")
    amplitudes = rng.uniform(*AMPLITUDE_RANGE, size=n_components)
    if set_label == "A":
        f1 = int(rng.integers(SET_A_F1_RANGE[0], SET_A_F1_RANGE[1] + 1))
        freqs = [Fraction((i + 1) * f1) for i in range(n_components)]
    elif set_label == "B":
        seen: set[Fraction] = set()
        freqs = []
        while len(freqs) < n_components:
            a = int(rng.integers(1, SET_B_MAX_INTEGER + 1))
            b = int(rng.integers(1, SET_B_MAX_INTEGER + 1))
            f = Fraction(a, b)
            if f not in seen:
                seen.add(f)
                freqs.append(f)
        freqs.sort()
    else:
        raise ValueError(f"set_label must be 'A' or 'B', got {set_label!r}")
    return tuple(
        SineComponent(amplitude=float(a), frequency=f)
        for a, f in zip(amplitudes, freqs)
    )


def draw_spec(
    set_label: str,
    n_components: int,
    snr_db: float,
    sampling_ratio: float,
    rng: np.random.Generator,
    noise_seed: int = 0,
    series_length: int = CONTEXT_LENGTH + HORIZON,
) -> SignalSpec:
    """One spec with freshly drawn components; ``rng`` supplies the draw."""
    return SignalSpec(
        set_label=set_label,
        components=draw_components(set_label, n_components, rng),
        snr_db=snr_db,
        sampling_ratio=sampling_ratio,
        seed=noise_seed,
        series_length=series_length,
    )


def iter_dataset(
    set_label: str,
    master_seed: int,
    *,
    n_values: Sequence[int] = N_VALUES,
    draws_per_cell: int = DRAWS_PER_CELL,
    snr_values: Sequence[float] = SNR_DB_VALUES,
    ratio_values: Sequence[float] = SAMPLING_RATIOS,
    context_length: int = CONTEXT_LENGTH,
    horizon: int = HORIZON,
) -> Iterator[tuple[GridPoint, SignalSpec, SampledSeries]]:
    """Generate the full grid for one set in deterministic order.

    Iteration nests N > draw > snr > ratio; the component draw happens once
    per (N, draw) and is reused across the inner sub-grid.
    """
    series_length = context_length + horizon
    for n in n_values:
        for draw in range(draws_per_cell):
            comp_rng = np.random.Generator(
                np.random.Philox(component_seed_sequence(master_seed, set_label, n, draw))
            )
            components = draw_components(set_label, n, comp_rng)
            for snr in snr_values:
                for ratio in ratio_values:
                    point = GridPoint(set_label, n, draw, float(snr), float(ratio))
                    spec = SignalSpec(
                        set_label=set_label,
                        components=components,
                        snr_db=float(snr),
                        sampling_ratio=float(ratio),
                        seed=noise_seed(master_seed, set_label, n, draw, snr, ratio),
                        series_length=series_length,
                    )
                    series = sample_signal(
                        spec,
                        context_length=context_length,
                        horizon=horizon,
                        spec_ref=series_id(point),
                    )
                    yield point, spec, series


def generate_dataset(
    set_label: str, master_seed: int, **grid
) -> list[tuple[SignalSpec, SampledSeries]]:
    """Materialize one set as (spec, series) pairs."""
    return [(spec, series) for _, spec, series in iter_dataset(set_label, master_seed, **grid)]


def iter_cells(
    set_label: str,
    master_seed: int,
    *,
    n_values: Sequence[int] = N_VALUES,
    draws_per_cell: int = DRAWS_PER_CELL,
) -> Iterator[tuple[int, int, tuple[SineComponent, ...]]]:
    """Just the per-(N, draw) component draws, without sampling any series."""
    for n in n_values:
        for draw in range(draws_per_cell):
            comp_rng = np.random.Generator(
                np.random.Philox(component_seed_sequence(master_seed, set_label, n, draw))
            )
            yield n, draw, draw_components(set_label, n, comp_rng)


def write_dataset_csv(path, set_label: str, master_seed: int, **grid) -> dict:
    """Write one set as long-format CSV plus a sidecar manifest.

    Returns the manifest dict.  Values are formatted with shortest
    round-trip precision, so the file is byte-stable across runs.
    """
    sha = hashlib.sha256()
    n_series = 0
    n_rows = 0
    with open(path, "w", newline="\n") as fh:
        header = ",".join(DATASET_COLUMNS) + "\n"
        fh.write(header)
        sha.update(header.encode())
        for point, spec, series in iter_dataset(set_label, master_seed, **grid):
            sid = series_id(point)
            prefix = (
                f"{sid},{point.set_label},{point.n_components},{point.draw_index},"
                f"{point.snr_db:g},{point.sampling_ratio:g},{series.sample_interval!r},"
            )
            block = "".join(
                f"{prefix}{t},{v!r}\n" for t, v in enumerate(series.values.tolist())
            )
            fh.write(block)
            sha.update(block.encode())
            n_series += 1
            n_rows += len(series.values)

    manifest = dataset_manifest(set_label, master_seed, **grid)
    manifest["series_count"] = n_series
    manifest["row_count"] = n_rows
    manifest["sha256"] = sha.hexdigest()
    manifest_path = str(path) + ".manifest.json"
    with open(manifest_path, "w", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest


def dataset_manifest(
    set_label: str,
    master_seed: int,
    *,
    n_values: Sequence[int] = N_VALUES,
    draws_per_cell: int = DRAWS_PER_CELL,
    snr_values: Sequence[float] = SNR_DB_VALUES,
    ratio_values: Sequence[float] = SAMPLING_RATIOS,
    context_length: int = CONTEXT_LENGTH,
    horizon: int = HORIZON,
) -> dict:
    return {
        "tool": "sinebench",
        "version": __version__,
        "set": set_label,
        "master_seed": master_seed,
        "grid": {
            "n_values": list(n_values),
            "draws_per_cell": draws_per_cell,
            "snr_db": [float(s) for s in snr_values],
            "sampling_ratios": [float(r) for r in ratio_values],
            "context_length": context_length,
            "horizon": horizon,
        },
        "distributions": {
            "amplitude_uniform": list(AMPLITUDE_RANGE),
            "set_a_f1_uniform_int": list(SET_A_F1_RANGE),
            "set_b_integer_max": SET_B_MAX_INTEGER,
            "phase": 0.0,
        },
    }
