"""Exact frequency arithmetic for periodic signals.

Frequencies are kept as :class:`fractions.Fraction` so that the fundamental
period of a sum of sinusoids can be computed exactly with integer lcm/gcd
instead of floating-point guesswork.
"""

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

Rational = Fraction


def reduce(numerator: int, denominator: int) -> Fraction:
    """Return numerator/denominator in lowest terms with a positive denominator.

    Raises ZeroDivisionError for a zero denominator.
    """
    return Fraction(numerator, denominator)


def fundamental_period(frequencies: Iterable[Fraction]) -> Fraction:
    """Smallest P > 0 such that every frequency completes a whole number of
    cycles in P seconds.

    For reduced frequencies a_n/b_n this is lcm(b_1..b_N) / gcd(a_1..a_N):
    the reciprocal of the gcd of the frequencies.
    """
    freqs = [Fraction(f) for f in frequencies]
    if not freqs:
        raise ValueError("need at least one frequency")
    if any(f <= 0 for f in freqs):
        raise ValueError("frequencies must be positive")
    return Fraction(
        lcm(*(f.denominator for f in freqs)),
        gcd(*(f.numerator for f in freqs)),
    )


def denominator_lcm(frequencies: Iterable[Fraction]) -> int:
    """lcm of the reduced denominators, in seconds.

    This equals the fundamental period only when the numerators are coprime;
    otherwise it overstates the period by a factor of gcd(numerators).  It is
    reported alongside the exact period because it is the more common
    back-of-the-envelope estimate.
    """
    freqs = [Fraction(f) for f in frequencies]
    if not freqs:
        raise ValueError("need at least one frequency")
    if any(f <= 0 for f in freqs):
        raise ValueError("frequencies must be positive")
    return lcm(*(f.denominator for f in freqs))
