"""Kronecker coefficients of the symmetric group."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable

from .characters import CharacterCache, centralizer_order, character
from .errors import ContractError, InvariantError
from .partitions import Partition, conjugate, dim_weyl, enumerate_partitions, rectangle

__all__ = ["SplitCheck", "kron", "kron_rectangular", "verify_split_identity"]


def kron(lam: Iterable[int], mu: Iterable[int], nu: Iterable[int], cache: CharacterCache | None = None) -> int:
    """g_{lam,mu,nu}: dimension of the S_n-invariants in [lam] x [mu] x [nu].

    Evaluated as (1/n!) sum_c |c| chi_lam(c) chi_mu(c) chi_nu(c) after the
    length bound and the closed forms for one-row and one-column shapes.
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    n = lam.size
    if n != mu.size or n != nu.size:
        raise ContractError(f"kron: sizes differ ({lam.size}, {mu.size}, {nu.size})")
    if n == 0:
        raise ContractError("kron: partitions must be nonempty")

    a, b, c = sorted((lam, mu, nu), key=len, reverse=True)
    if len(a) > len(b) * len(c):
        return 0
    for first, x, y in ((lam, mu, nu), (mu, lam, nu), (nu, lam, mu)):
        if len(first) == 1:
            return int(x == y)
        if first[0] == 1:
            return int(x == conjugate(y))

    n_fact = factorial(n)
    total = 0
    for cls in enumerate_partitions(n):
        chi = character(lam, cls, cache)
        if chi == 0:
            continue
        chi *= character(mu, cls, cache)
        if chi == 0:
            continue
        chi *= character(nu, cls, cache)
        total += chi * (n_fact // centralizer_order(cls))
    g, rem = divmod(total, n_fact)
    if rem or g < 0:
        raise InvariantError(f"class sum for {lam},{mu},{nu} is {total}/{n_fact}")
    return g


def kron_rectangular(lam: Iterable[int], ell: int, d: int, cache: CharacterCache | None = None) -> int:
    """g_{lam, box, box} with box the ell-by-d rectangle (d rows of length ell)."""
    lam = Partition(lam)
    if lam.size != ell * d:
        raise ContractError(f"|lambda| = {lam.size} but ell*d = {ell * d}")
    if lam.length > d * d:
        raise ContractError(f"lambda has {lam.length} parts, more than d^2 = {d * d}")
    box = rectangle(ell, d)
    return kron(lam, box, box, cache)


@dataclass(frozen=True)
class SplitCheck:
    holds: bool
    lhs: int
    rhs: int


def verify_split_identity(lam: Iterable[int], d1: int, d2: int, cache: CharacterCache | None = None) -> SplitCheck:
    """Compare dim W_lam(GL_{d1 d2}) with its restriction to GL_{d1} x GL_{d2}."""
    lam = Partition(lam)
    if lam.length > d1 * d2:
        raise ContractError(f"lambda has more than d1*d2 = {d1 * d2} parts")
    lhs = dim_weyl(lam, d1 * d2)
    rhs = 0
    n = lam.size
    for mu in enumerate_partitions(n, d1):
        wmu = dim_weyl(mu, d1)
        for nu in enumerate_partitions(n, d2):
            g = kron(lam, mu, nu, cache)
            if g:
                rhs += g * wmu * dim_weyl(nu, d2)
    return SplitCheck(lhs == rhs, lhs, rhs)
