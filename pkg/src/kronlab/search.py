"""Finite searches around rectangular Kronecker coefficients.

* :func:`scan_vanishing` lists the partitions lam of ell*d into at most d^2
  parts whose coefficient against two ell-by-d rectangles vanishes.
* :func:`find_stretch` finds the smallest k with g_{k lam, k box, k box} != 0.
* :func:`rational_membership` tests a rational spectrum triple against the
  Kronecker cone by clearing denominators and stretching.
* :func:`theorem2_threshold` finds the smallest k for which the three
  estimation tails are certified below 1/3.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .bounds import compare_scaled_exp_neg, exp_neg_interval
from .characters import CharacterCache
from .errors import BudgetExceeded, ContractError
from .kronecker import kron, kron_rectangular
from .partitions import Partition, count_partitions, enumerate_partitions, stretch

__all__ = [
    "DEFAULT_SCAN_BUDGET",
    "MembershipResult",
    "ScanReport",
    "StretchResult",
    "ThresholdReport",
    "find_stretch",
    "rational_membership",
    "scan_vanishing",
    "theorem2_bounds",
    "theorem2_threshold",
]

DEFAULT_SCAN_BUDGET = 50_000
STRETCH_CAP = 8
MEMBERSHIP_CAP = 12


@dataclass
class ScanReport:
    d: int
    ell: int
    total: int
    vanishing: list[Partition]
    elapsed: float = field(default=0.0, compare=False)


def scan_vanishing(
    d: int,
    ell: int,
    budget: int = DEFAULT_SCAN_BUDGET,
    workers: int = 1,
    cache: CharacterCache | None = None,
) -> ScanReport:
    """Every lam of ell*d into at most d^2 parts with g_{lam, box, box} = 0.

    ``workers > 1`` evaluates candidates on a thread pool; the report keeps
    enumeration order regardless.
    """
    if d < 1 or ell < 1:
        raise ContractError(f"d and ell must be >= 1, got d={d}, ell={ell}")
    n = ell * d
    count = count_partitions(n, d * d)
    if count > budget:
        raise BudgetExceeded(count, budget)
    start = time.perf_counter()
    candidates = enumerate_partitions(n, d * d)

    def coefficient(lam):
        return kron_rectangular(lam, ell, d, cache)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            values = list(pool.map(coefficient, candidates))
    else:
        values = [coefficient(lam) for lam in candidates]
    vanishing = [lam for lam, g in zip(candidates, values) if g == 0]
    return ScanReport(d, ell, len(candidates), vanishing, time.perf_counter() - start)


@dataclass
class StretchResult:
    lam: Partition
    d: int
    ell: int
    k_cap: int
    k_min: int | None  # None when no k <= k_cap works
    g_at_k: int = 0

    @property
    def found(self) -> bool:
        return self.k_min is not None


def find_stretch(lam: Iterable[int], d: int, k_cap: int = STRETCH_CAP, cache: CharacterCache | None = None) -> StretchResult:
    """Smallest k <= k_cap with g_{k lam, k box, k box} nonzero.

    Every k is tried in turn; a zero at k does not rule out k+1, nor does a
    nonzero value at k say anything about larger multiples.
    """
    lam = Partition(lam)
    if d < 1 or k_cap < 1:
        raise ContractError("d and k_cap must be >= 1")
    if lam.size == 0 or lam.size % d:
        raise ContractError(f"|lambda| = {lam.size} is not a positive multiple of d = {d}")
    if lam.length > d * d:
        raise ContractError(f"lambda has {lam.length} parts, more than d^2 = {d * d}")
    ell = lam.size // d
    for k in range(1, k_cap + 1):
        g = kron_rectangular(stretch(lam, k), k * ell, d, cache)
        if g:
            return StretchResult(lam, d, ell, k_cap, k, g)
    return StretchResult(lam, d, ell, k_cap, None)


@dataclass
class MembershipResult:
    k: int | None
    n: int | None = None
    partitions: tuple[Partition, Partition, Partition] | None = None
    g: int = 0

    @property
    def found(self) -> bool:
        return self.k is not None


def _check_distribution(x: Sequence, length: int, name: str) -> tuple[Fraction, ...]:
    x = tuple(Fraction(v) for v in x)
    if len(x) != length:
        raise ContractError(f"{name} has length {len(x)}, expected {length}")
    if any(v < 0 for v in x) or any(a < b for a, b in zip(x, x[1:])):
        raise ContractError(f"{name} must be decreasing and nonnegative")
    if sum(x) != 1:
        raise ContractError(f"{name} sums to {sum(x)}, not 1")
    return x


def rational_membership(triple: Sequence[Sequence], k_cap: int = MEMBERSHIP_CAP, cache: CharacterCache | None = None) -> MembershipResult:
    """Smallest k such that k*L*(r, a, b) has a nonzero Kronecker coefficient.

    ``triple`` is (r, a, b) with r of length d^2 and a, b of length d; L is the
    lcm of all denominators.
    """
    if len(triple) != 3:
        raise ContractError("expected a triple of spectra")
    r, a, b = triple
    d = len(a)
    if d < 1:
        raise ContractError("empty marginal spectrum")
    r = _check_distribution(r, d * d, "joint spectrum")
    a = _check_distribution(a, d, "first marginal")
    b = _check_distribution(b, d, "second marginal")
    denom = lcm(*(v.denominator for v in r + a + b))
    for k in range(1, k_cap + 1):
        n = k * denom
        parts = tuple(Partition(int(v * n) for v in x) for x in (r, a, b))
        g = kron(*parts, cache=cache)
        if g:
            return MembershipResult(k, n, parts, g)
    return MembershipResult(None)


def _exponents(d: int) -> tuple[int, int, int]:
    marginal = d * (d + 1) // 2
    return marginal, marginal, d * d * (d * d + 1) // 2


def theorem2_bounds(d: int, eps, k: int) -> list[tuple[Fraction, Fraction]]:
    """Rational enclosures of the three tail bounds (k+1)^p exp(-k eps^2 / 2)."""
    x = Fraction(k, 2) * Fraction(eps) ** 2
    lo, hi = exp_neg_interval(x)
    return [((k + 1) ** p * lo, (k + 1) ** p * hi) for p in _exponents(d)]


def _all_below_third(d: int, eps: Fraction, k: int) -> bool:
    x = Fraction(k, 2) * eps * eps
    third = Fraction(1, 3)
    return all(compare_scaled_exp_neg((k + 1) ** p, x, third) < 0 for p in _exponents(d))


@dataclass
class ThresholdReport:
    d: int
    eps: Fraction
    k_star: int
    bound_values: list[tuple[Fraction, Fraction]]  # enclosures at k_star


def theorem2_threshold(d: int, eps) -> ThresholdReport:
    """Smallest k with all three tail bounds certified < 1/3.

    Each bound (k+1)^p exp(-c k) is at least 1 while it increases and
    decreasing afterwards, so it is < 1/3 at k exactly when k is past the
    last failure. The scan doubles to bracket the threshold, then bisects;
    every comparison is certified.
    """
    eps = Fraction(eps)
    if d < 1:
        raise ContractError("d must be >= 1")
    if not 0 < eps <= 2:
        raise ContractError(f"eps must lie in (0, 2], got {eps}")
    # first k past the peak of the largest exponent's bound
    p_max = max(_exponents(d))
    c = eps * eps / 2
    k = max(1, int(p_max / c))
    while not _all_below_third(d, eps, k):
        k *= 2
    lo_k, hi_k = 0, k
    # lo_k fails (or is 0), hi_k passes
    while hi_k - lo_k > 1:
        mid = (lo_k + hi_k) // 2
        if _all_below_third(d, eps, mid):
            hi_k = mid
        else:
            lo_k = mid
    return ThresholdReport(d, eps, hi_k, theorem2_bounds(d, eps, hi_k))
