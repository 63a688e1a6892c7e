"""
Anatomy of a benchmark series
=============================

Build the two families of test signals by hand and look at what makes them
hard or easy to forecast: exact fundamental periods, sampling intervals,
and the noise level implied by a target SNR.
"""

from fractions import Fraction

import numpy as np

from sinebench import (
    SignalSpec,
    SineComponent,
    calibrate_noise_sigma,
    clean_signal,
    fundamental_period,
    sample_signal,
)

# A "set A"-style signal: an integer base frequency plus exact harmonics.
# Its fundamental period is 1/f_1, so it always repeats within one second.
harmonics = tuple(
    SineComponent(amplitude=a, frequency=Fraction(n * 4))
    for n, a in zip(range(1, 4), (3.0, 1.5, 0.8))
)
print("harmonic stack:", [str(c.frequency) for c in harmonics])
print("  period:", fundamental_period([c.frequency for c in harmonics]), "s")

# A "set B"-style signal: unrelated reduced rationals.  The exact period is
# lcm(denominators)/gcd(numerators), which grows combinatorially -- here a
# pair of innocuous-looking fractions already needs 12 seconds to repeat.
rationals = (
    SineComponent(amplitude=2.0, frequency=Fraction(3, 4)),
    SineComponent(amplitude=1.0, frequency=Fraction(5, 6)),
)
print("rational mixture:", [str(c.frequency) for c in rationals])
print("  period:", fundamental_period([c.frequency for c in rationals]), "s")

# Sampling is always specified relative to the highest component frequency.
# ratio 2.5 means 2.5x that frequency; anything above 2 avoids aliasing.
spec = SignalSpec(
    set_label="B",
    components=rationals,
    snr_db=15.0,
    sampling_ratio=2.5,
    seed=42,
    series_length=576,
)
print(f"\nsampling at {spec.sampling_ratio} x f_max -> dt = {spec.sample_interval:.4f} s")
print(f"context covers {512 * spec.sample_interval:.1f} s,",
      f"one full period is {float(spec.period):.1f} s")

# The SNR calibration solves sigma^2 = P_signal / 10^(SNR/10).  Power adds
# across components as A^2/2 each.
for snr in (2.0, 15.0, 30.0):
    sigma = calibrate_noise_sigma(rationals, snr)
    print(f"SNR {snr:5.1f} dB -> sigma = {sigma:.4f}")

# Sampling is deterministic given the spec: the seed fixes the noise draw
# bit for bit, and the clean signal is just the sinusoid sum at the grid.
series = sample_signal(spec)
clean = clean_signal(spec)
resid = series.values - clean
print(f"\ndrawn series: {len(series.values)} samples "
      f"({series.context_length} context + {series.horizon} horizon)")
print(f"noise std measured {np.std(resid):.4f} vs calibrated {spec.noise_sigma:.4f}")
print("first five samples:", np.round(series.values[:5], 3))
