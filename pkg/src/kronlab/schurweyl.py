"""Exact Schur-Weyl projector weights and the spectrum-estimation bound.

For a density operator with spectrum r on C^d, the weight of the isotypic
component [lam] x W_lam inside the k-th tensor power is
dim[lam] * s_lam(r). Everything here works from spectra alone; no tensor
power operator is ever built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .bounds import compare_scaled_exp_neg, exp_neg_interval
from .characters import CharacterCache, centralizer_order, character
from .errors import BudgetExceeded, ContractError
from .kronecker import kron
from .partitions import Partition, count_partitions, dim_specht, enumerate_partitions, l1_distance, normalize

__all__ = [
    "BoundCheck",
    "ProjectorWeight",
    "Theorem2Witness",
    "check_estimation_bound",
    "minimal_witness_k",
    "projector_weight",
    "schur_eval",
    "theorem2_witness",
    "uniform",
    "validate_spectrum",
    "WITNESS_BUDGET",
]

WITNESS_BUDGET = 20_000


def uniform(d: int) -> tuple[Fraction, ...]:
    return (Fraction(1, d),) * d


def validate_spectrum(r: Iterable) -> tuple[Fraction, ...]:
    """Exact decreasing probability vector, or ContractError."""
    r = tuple(Fraction(x) for x in r)
    if not r:
        raise ContractError("spectrum is empty")
    if any(x < 0 for x in r):
        raise ContractError(f"spectrum has a negative entry: {r}")
    if any(a < b for a, b in zip(r, r[1:])):
        raise ContractError("spectrum must be decreasing")
    if sum(r) != 1:
        raise ContractError(f"spectrum sums to {sum(r)}, not 1")
    return r


def _power_sum(x: Sequence[Fraction], j: int) -> Fraction:
    return sum((xi**j for xi in x), Fraction(0))


def schur_eval(lam: Iterable[int], x: Sequence, cache: CharacterCache | None = None) -> Fraction:
    """s_lam(x) via the power-sum expansion sum_mu chi_lam(mu) p_mu(x) / z_mu."""
    lam = Partition(lam)
    x = [Fraction(v) for v in x]
    if lam.length > len(x):
        return Fraction(0)
    powers: dict[int, Fraction] = {}
    total = Fraction(0)
    for mu in enumerate_partitions(lam.size):
        chi = character(lam, mu, cache)
        if chi == 0:
            continue
        p = Fraction(1)
        for part in mu:
            if part not in powers:
                powers[part] = _power_sum(x, part)
            p *= powers[part]
        total += chi * p / centralizer_order(mu)
    return total


@dataclass(frozen=True)
class ProjectorWeight:
    lam: Partition
    spectrum: tuple[Fraction, ...]
    weight: Fraction


def projector_weight(lam: Iterable[int], r: Sequence, cache: CharacterCache | None = None) -> ProjectorWeight:
    """tr(P_lam rho^{(x)k}) for rho with spectrum r, k = |lam|."""
    lam = Partition(lam)
    r = validate_spectrum(r)
    if lam.length > len(r):
        raise ContractError(f"lambda has {lam.length} parts but the spectrum has length {len(r)}")
    return ProjectorWeight(lam, r, dim_specht(lam) * schur_eval(lam, r, cache))


@dataclass(frozen=True)
class BoundCheck:
    lam: Partition
    spectrum: tuple[Fraction, ...]
    k: int
    d: int
    lhs: Fraction
    rhs: Fraction  # certified upper end of the enclosure of the bound
    holds: bool

    @property
    def ratio(self) -> float:
        return float(self.lhs / self.rhs) if self.rhs else float("inf")


def check_estimation_bound(lam: Iterable[int], r: Sequence, cache: CharacterCache | None = None) -> BoundCheck:
    """Compare tr(P_lam rho^k) with (k+1)^{d(d-1)/2} exp(-(k/2) |lam/k - r|_1^2).

    ``holds`` is decided exactly: the exponential is enclosed in a rational
    interval that is refined until it separates from the left side.
    """
    pw = projector_weight(lam, r, cache)
    lam, r = pw.lam, pw.spectrum
    k, d = lam.size, len(r)
    dist = l1_distance(normalize(lam), r) if k else l1_distance((), r)
    exponent = Fraction(k, 2) * dist * dist
    poly = (k + 1) ** (d * (d - 1) // 2)
    hi = poly * exp_neg_interval(exponent)[1]
    holds = compare_scaled_exp_neg(poly, exponent, pw.weight) >= 0
    return BoundCheck(lam, r, k, d, pw.weight, hi, holds)


@dataclass
class Theorem2Witness:
    lam: Partition
    d: int
    eps: Fraction
    k: int
    n: int
    w_x_bar: Fraction
    w_y_bar: Fraction
    w_z_bar: Fraction
    triple: tuple[Partition, Partition, Partition] | None = None
    g: int = 0
    searched: int = 0
    ball_sizes: tuple[int, int, int] = field(default=(0, 0, 0))

    @property
    def all_below_third(self) -> bool:
        third = Fraction(1, 3)
        return self.w_x_bar < third and self.w_y_bar < third and self.w_z_bar < third


def _tail_weight(n: int, r: tuple[Fraction, ...], centre: tuple[Fraction, ...], eps: Fraction, cache):
    """Total weight outside the eps-ball around ``centre``, and the ball itself."""
    outside = Fraction(0)
    ball = []
    for mu in enumerate_partitions(n, len(r)):
        if l1_distance(normalize(mu), centre) <= eps:
            ball.append(mu)
        else:
            outside += projector_weight(mu, r, cache).weight
    return outside, ball


def theorem2_witness(
    lam: Iterable[int],
    d: int,
    eps,
    k: int,
    budget: int = WITNESS_BUDGET,
    search: bool = True,
    cache: CharacterCache | None = None,
) -> Theorem2Witness:
    """Exact bookkeeping of the three-projector argument at stretching factor k.

    With n = k|lam|, the marginal weights use spectrum u_d on partitions of n
    into at most d parts, and the joint weight uses spectrum lam/|lam| on
    partitions into at most d^2 parts. If ``search`` is set, the eps-balls are
    scanned for a triple (Lambda, mu, nu) with nonzero Kronecker coefficient.
    """
    lam = Partition(lam)
    eps = Fraction(eps)
    if d < 1 or k < 1:
        raise ContractError("d and k must be >= 1")
    if not 0 < eps <= 2:
        raise ContractError(f"eps must lie in (0, 2], got {eps}")
    if lam.size == 0 or lam.size % d:
        raise ContractError(f"|lambda| = {lam.size} is not a positive multiple of d = {d}")
    if lam.length > d * d:
        raise ContractError(f"lambda has more than d^2 = {d * d} parts")
    n = k * lam.size
    count = count_partitions(n, d * d)
    if count > budget:
        raise BudgetExceeded(count, budget)

    u = uniform(d)
    joint = normalize(lam) + (Fraction(0),) * (d * d - lam.length)
    w_x, ball_mu = _tail_weight(n, u, u, eps, cache)
    w_z, ball_big = _tail_weight(n, joint, joint, eps, cache)
    report = Theorem2Witness(lam, d, eps, k, n, w_x, w_x, w_z, ball_sizes=(len(ball_big), len(ball_mu), len(ball_mu)))
    if search:
        for big in ball_big:
            for i, mu in enumerate(ball_mu):
                for nu in ball_mu[i:]:
                    report.searched += 1
                    g = kron(big, mu, nu, cache)
                    if g:
                        report.triple, report.g = (big, mu, nu), g
                        return report
    return report


def minimal_witness_k(lam: Iterable[int], d: int, eps, k_cap: int = 12, budget: int = WITNESS_BUDGET, cache=None) -> Theorem2Witness | None:
    """Smallest k at which all three aggregate weights drop below 1/3."""
    for k in range(1, k_cap + 1):
        report = theorem2_witness(lam, d, eps, k, budget=budget, search=False, cache=cache)
        if report.all_below_third:
            return theorem2_witness(lam, d, eps, k, budget=budget, search=True, cache=cache)
    return None
