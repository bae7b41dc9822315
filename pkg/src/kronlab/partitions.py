"""Integer partitions and the dimension formulas attached to them."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator

from .errors import ContractError

__all__ = [
    "Partition",
    "enumerate_partitions",
    "count_partitions",
    "conjugate",
    "stretch",
    "rectangle",
    "dim_specht",
    "dim_weyl",
    "normalize",
    "l1_distance",
]


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Trailing zeros are stripped on construction so that ``Partition((2, 1, 0))
    == Partition((2, 1))``. Instances are ordinary tuples, hence hashable and
    usable directly as cache keys.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ContractError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ContractError(f"parts must be weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Read the bracketed text form, e.g. ``"[4,2,1]"`` or ``"[]"``."""
        m = re.fullmatch(r"\s*\[\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\]\s*", text)
        if m is None:
            raise ContractError(f"not a partition: {text!r}")
        body = m.group(1).strip()
        return cls(int(p) for p in body.split(",")) if body else cls()


def _trusted(parts: tuple[int, ...]) -> Partition:
    # skips validation; only for tuples produced by our own generators
    return tuple.__new__(Partition, parts)


def enumerate_partitions(n: int, max_length: int | None = None) -> list[Partition]:
    """All partitions of ``n`` with at most ``max_length`` parts, reverse-lex order."""
    if n < 0:
        raise ContractError("n must be nonnegative")
    if max_length is None:
        max_length = n
    if max_length < 0:
        raise ContractError("max_length must be nonnegative")
    return [_trusted(p) for p in _generate(n, n, max_length)]


def _generate(n: int, largest: int, slots: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    if slots == 0:
        return
    for first in range(min(n, largest), 0, -1):
        # remaining slots can hold at most first*(slots-1)
        if first * slots < n:
            break
        for rest in _generate(n - first, first, slots - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def count_partitions(n: int, max_length: int | None = None) -> int:
    """Number of partitions of ``n`` into at most ``max_length`` parts.

    Counts by dynamic programming without enumerating, so it is safe to use
    as a budget check before a large scan.
    """
    if max_length is None or max_length > n:
        max_length = n
    # partitions with at most m parts == partitions with parts at most m
    table = [1] + [0] * n
    for part in range(1, max_length + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]


def conjugate(lam: Iterable[int]) -> Partition:
    lam = tuple(lam)
    if not lam:
        return Partition()
    return _trusted(tuple(sum(1 for p in lam if p > j) for j in range(lam[0])))


def stretch(lam: Iterable[int], k: int) -> Partition:
    if k < 1:
        raise ContractError(f"stretching factor must be >= 1, got {k}")
    return Partition(k * p for p in lam)


def rectangle(ell: int, d: int) -> Partition:
    """The partition (ell, ..., ell) with d parts."""
    if ell < 1 or d < 1:
        raise ContractError(f"rectangle needs ell, d >= 1, got ell={ell}, d={d}")
    return _trusted((ell,) * d)


def _hooks(lam: tuple[int, ...]) -> Iterator[tuple[int, int]]:
    """Yield (hook length, content) for every cell of the diagram."""
    conj = conjugate(lam)
    for i, row in enumerate(lam):
        for j in range(row):
            yield row - j + conj[j] - i - 1, j - i


def dim_specht(lam: Iterable[int]) -> int:
    """Dimension of the Specht module, by the hook-length formula."""
    lam = tuple(lam)
    return factorial(sum(lam)) // prod(h for h, _ in _hooks(lam))


def dim_weyl(lam: Iterable[int], d: int) -> int:
    """Dimension of the irreducible GL_d-module with highest weight ``lam``.

    Zero when ``lam`` has more than ``d`` parts.
    """
    lam = tuple(p for p in lam if p)
    if len(lam) > d:
        return 0
    num = den = 1
    for hook, content in _hooks(lam):
        num *= d + content
        den *= hook
    return num // den


def normalize(lam: Iterable[int]) -> tuple[Fraction, ...]:
    """The probability vector lam / |lam| with exact entries."""
    lam = tuple(lam)
    n = sum(lam)
    if n == 0:
        raise ContractError("cannot normalize the empty partition")
    return tuple(Fraction(p, n) for p in lam)


def l1_distance(x: Iterable, y: Iterable) -> Fraction:
    """l1 distance between two vectors, padding the shorter with zeros."""
    x, y = list(x), list(y)
    width = max(len(x), len(y))
    x += [0] * (width - len(x))
    y += [0] * (width - len(y))
    return sum((abs(Fraction(a) - Fraction(b)) for a, b in zip(x, y)), Fraction(0))
