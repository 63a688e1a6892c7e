"""Noisy sums of sinusoids, sampled above Nyquist with calibrated noise.

A signal is X(t) = sum_n A_n sin(2 pi f_n t + phi_n) + w(t) with Gaussian
white noise w.  Frequencies are exact rationals, so the fundamental period of
the clean signal is known exactly.  Sampling runs at ``sampling_ratio`` times
the highest component frequency, with the ratio required to be strictly above
the Nyquist factor of 2.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import ndtri

from .rational import fundamental_period

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class SineComponent:
    """One sinusoid: amplitude * sin(2 pi frequency t + phase)."""

    amplitude: float
    frequency: Fraction
    phase: float = 0.0

    def __post_init__(self):
        if self.amplitude <= 0:
            raise ValueError(f"amplitude must be positive, got {self.amplitude}")
        if self.frequency <= 0:
            raise ValueError(f"frequency must be positive, got {self.frequency}")


@dataclass(frozen=True)
class SignalSpec:
    """Everything needed to regenerate one sampled series bit-for-bit."""

    set_label: str
    components: tuple[SineComponent, ...]
    snr_db: float
    sampling_ratio: float
    seed: int
    series_length: int = 576

    def __post_init__(self):
        if self.set_label not in ("A", "B"):
            raise ValueError(f"set_label must be 'A' or 'B', got {self.set_label!r}")
        if not self.components:
            raise ValueError("components must be non-empty")
        freqs = [c.frequency for c in self.components]
        if len(set(freqs)) != len(freqs):
            raise ValueError("component frequencies must be distinct")
        # ratio == 2 would put the top component exactly at Nyquist.
        if not self.sampling_ratio > 2.0:
            raise ValueError(
                f"sampling_ratio must exceed 2, got {self.sampling_ratio}"
            )
        if self.series_length < 1:
            raise ValueError("series_length must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")

    @property
    def max_frequency(self) -> Fraction:
        return max(c.frequency for c in self.components)

    @property
    def sample_interval(self) -> float:
        """Seconds between samples: 1 / (sampling_ratio * f_max)."""
        return 1.0 / (self.sampling_ratio * float(self.max_frequency))

    @property
    def signal_power(self) -> float:
        """Mean power of the clean signal: sum A_n^2 / 2."""
        return sum(c.amplitude**2 for c in self.components) / 2.0

    @property
    def noise_sigma(self) -> float:
        return calibrate_noise_sigma(self.components, self.snr_db)

    @property
    def period(self) -> Fraction:
        """Exact fundamental period of the clean signal, in seconds."""
        return fundamental_period(c.frequency for c in self.components)


@dataclass(frozen=True, eq=False)
class SampledSeries:
    """A sampled series split into a forecasting context and a held-out tail."""

    values: np.ndarray
    sample_interval: float
    context_length: int = 512
    horizon: int = 64
    spec_ref: str = ""

    def __post_init__(self):
        if self.values.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if self.context_length < 0 or self.horizon < 0:
            raise ValueError("context_length and horizon must be non-negative")
        if len(self.values) != self.context_length + self.horizon:
            raise ValueError(
                f"series length {len(self.values)} != context {self.context_length}"
                f" + horizon {self.horizon}"
            )
        if self.sample_interval <= 0:
            raise ValueError("sample_interval must be positive")

    @property
    def context(self) -> np.ndarray:
        return self.values[: self.context_length]

    @property
    def truth(self) -> np.ndarray:
        return self.values[self.context_length :]


def calibrate_noise_sigma(components, snr_db: float) -> float:
    """Noise standard deviation hitting a target SNR in dB.

    sigma^2 = P_signal / 10^(snr_db / 10) with P_signal = sum A_n^2 / 2.
    An infinite SNR yields sigma = 0.
    """
    comps = tuple(components)
    if not comps:
        raise ValueError("components must be non-empty")
    power = sum(c.amplitude**2 for c in comps) / 2.0
    return float(np.sqrt(power / 10.0 ** (snr_db / 10.0)))


def _standard_normal(n: int, seed: int) -> np.ndarray:
    """n iid standard normals from a counter-based stream.

    Philox uniforms pushed through the inverse normal CDF: a fixed number of
    draws and no rejection step, so the stream is reproducible bit-for-bit
    and any series can be regenerated in isolation from its seed.
    """
    gen = np.random.Generator(np.random.Philox(key=seed))
    # 53-bit integers offset to the open interval (0, 1); ndtri(0) is -inf.
    u = (gen.integers(0, 1 << 53, size=n, dtype=np.uint64) + 0.5) * 2.0**-53
    return ndtri(u)


def clean_signal(spec: SignalSpec) -> np.ndarray:
    """The noise-free sampled signal for ``spec``."""
    k = np.arange(spec.series_length)
    dt = spec.sample_interval
    x = np.zeros(spec.series_length)
    for c in spec.components:
        x += c.amplitude * np.sin(TWO_PI * float(c.frequency) * dt * k + c.phase)
    return x


def sample_signal(
    spec: SignalSpec,
    context_length: int | None = None,
    horizon: int | None = None,
    spec_ref: str = "",
) -> SampledSeries:
    """Sample ``spec`` at its Nyquist-scaled rate and add calibrated noise.

    Generation is a pure function of the spec: the noise stream is keyed by
    ``spec.seed`` alone.  By default the last 64 samples form the horizon.
    """
    n = spec.series_length
    if horizon is None:
        horizon = 64 if n > 64 else 0
    if context_length is None:
        context_length = n - horizon
    values = clean_signal(spec)
    sigma = spec.noise_sigma
    if sigma > 0.0:
        values = values + sigma * _standard_normal(n, spec.seed)
    return SampledSeries(
        values=values,
        sample_interval=spec.sample_interval,
        context_length=context_length,
        horizon=horizon,
        spec_ref=spec_ref,
    )
