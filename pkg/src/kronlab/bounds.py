"""Certified rational enclosures of the exponential function.

Only ``exp`` is needed: the estimation bound and the stretching threshold
both compare ``poly(k) * exp(-x)`` against a rational number, and those
comparisons must be decisions rather than float guesses.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor

__all__ = ["exp_interval", "exp_neg_interval", "compare_scaled_exp_neg"]


def _round_down(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(floor(q * scale), scale)


def _round_up(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(ceil(q * scale), scale)


def exp_interval(x: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Return rationals ``lo <= exp(x) <= hi`` for ``x >= 0``.

    ``x`` is halved until it is at most 1/2, the Taylor series is summed with
    a geometric bound on its tail, and the enclosure is squared back up with
    outward rounding to ``bits`` fractional bits. Larger ``bits`` give
    tighter intervals.
    """
    x = Fraction(x)
    if x < 0:
        raise ValueError("exp_interval expects x >= 0")
    if x == 0:
        return Fraction(1), Fraction(1)
    halvings = 0
    while x > Fraction(1, 2):
        x /= 2
        halvings += 1
    work = bits + 2 * halvings + 8
    term = Fraction(1)
    total = Fraction(1)
    j = 0
    tol = Fraction(1, 1 << work)
    while True:
        j += 1
        term = term * x / j
        total += term
        # tail after term j is at most term * x/(j+1) / (1 - x/(j+2))
        tail = term * x / (j + 1) / (1 - x / (j + 2))
        if tail < tol:
            break
        total = _round_down(total, work)
        term = _round_down(term, work + 4)
    lo = _round_down(total, work)
    hi = _round_up(total + tail + Fraction(j + 2, 1 << (work - 4)), work)
    for _ in range(halvings):
        lo = _round_down(lo * lo, work)
        hi = _round_up(hi * hi, work)
    return lo, hi


def exp_neg_interval(x: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Return rationals ``lo <= exp(-x) <= hi`` for ``x >= 0``."""
    lo, hi = exp_interval(x, bits)
    return 1 / hi, 1 / lo


def compare_scaled_exp_neg(scale: Fraction | int, x: Fraction, target: Fraction, max_bits: int = 4096) -> int:
    """Sign of ``scale * exp(-x) - target``, decided with certified bounds.

    Returns -1, 0 or 1. Equality can only be certified when ``x == 0``; for
    ``x > 0`` the exponential is irrational, so refinement always terminates.
    """
    scale, x, target = Fraction(scale), Fraction(x), Fraction(target)
    if x == 0 or scale == 0:
        value = scale
        return (value > target) - (value < target)
    bits = 64
    while bits <= max_bits:
        lo, hi = exp_neg_interval(x, bits)
        if scale * hi < target:
            return -1
        if scale * lo > target:
            return 1
        bits *= 2
    raise ArithmeticError("could not separate scale*exp(-x) from target")
