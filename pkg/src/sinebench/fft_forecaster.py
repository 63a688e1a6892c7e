"""FFT-based forecaster: recover dominant tones, extend them past the context.

The context is Hann-windowed, transformed, and thresholded at a fraction of
the peak one-sided magnitude.  Surviving spectral peaks are converted back to
(amplitude, frequency, phase) triples and the sum of sinusoids is evaluated
over context + horizon; the tail is the forecast.  Frequencies snap to bin
centers -- no sub-bin interpolation -- so quantization error at non-integer
cycle counts is part of the baseline being measured.
"""

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi

DEFAULT_THRESHOLD = 0.2


@dataclass(frozen=True)
class RecoveredComponent:
    """One recovered tone; frequency is in cycles per sample."""

    amplitude: float
    frequency: float
    phase: float
    bin_index: int


def hann_window(length: int) -> np.ndarray:
    """Periodic Hann window w[k] = 0.5 (1 - cos(2 pi k / L)).

    The periodic (DFT-even) form has mean exactly 0.5 for every length, which
    is what the amplitude correction below assumes.  numpy.hanning is the
    symmetric variant and does not satisfy that, so it is not used here.
    """
    if length < 2:
        raise ValueError(f"window length must be >= 2, got {length}")
    return 0.5 * (1.0 - np.cos(TWO_PI * np.arange(length) / length))


def extract_components(
    context: np.ndarray, threshold_fraction: float = DEFAULT_THRESHOLD
) -> list[RecoveredComponent]:
    """Spectral peaks of the Hann-windowed context above a relative threshold.

    A bin m >= 1 is kept when its one-sided magnitude reaches
    ``threshold_fraction`` of the peak magnitude **and** is a local maximum of
    the magnitude spectrum.  The local-maximum condition drops the two
    window-leakage shoulders that flank every tone at exactly half its peak
    magnitude; keeping them would hand back three tones per real one and
    reconstruct the windowed signal instead of the signal.

    Amplitude correction is 4 |S_m| / T: one factor of 2 for the discarded
    negative-frequency half, one for the Hann coherent gain of 0.5.  The
    recovered phase converts the FFT's cosine reference to the sine
    convention used by the generators.
    """
    x = np.asarray(context, dtype=float)
    if x.ndim != 1:
        raise ValueError("context must be one-dimensional")
    t1 = len(x)
    if t1 < 4:
        raise ValueError(f"context too short for spectral estimation: {t1}")
    if not 0.0 < threshold_fraction <= 1.0:
        raise ValueError(f"threshold_fraction must be in (0, 1], got {threshold_fraction}")

    spectrum = np.fft.rfft(hann_window(t1) * x)
    mags = np.abs(spectrum[1:])  # bins 1 .. floor(T/2); DC carries no tone
    peak = mags.max()
    if peak == 0.0:
        return []
    left = np.r_[0.0, mags[:-1]]
    right = np.r_[mags[1:], 0.0]
    keep = (mags >= threshold_fraction * peak) & (mags >= left) & (mags > right)
    bins = np.nonzero(keep)[0] + 1

    components = []
    for m in bins:
        amplitude = 4.0 * np.abs(spectrum[m]) / t1
        phase = float(np.angle(spectrum[m]) + np.pi / 2.0)
        components.append(
            RecoveredComponent(
                amplitude=float(amplitude),
                frequency=m / t1,
                phase=phase,
                bin_index=int(m),
            )
        )
    return components


def forecast_fft(
    context: np.ndarray,
    horizon: int,
    threshold_fraction: float = DEFAULT_THRESHOLD,
) -> np.ndarray:
    """Extend the recovered tones over the horizon.

    The reconstruction is evaluated on sample indices 0 .. T+horizon-1 with
    the same time origin as the context; the final ``horizon`` values are
    returned.  An empty component list (all-zero context) forecasts zeros.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    x = np.asarray(context, dtype=float)
    components = extract_components(x, threshold_fraction)
    t1 = len(x)
    k = np.arange(t1, t1 + horizon)
    out = np.zeros(horizon)
    for c in components:
        out += c.amplitude * np.sin(TWO_PI * c.frequency * k + c.phase)
    return out
