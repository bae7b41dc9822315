"""Irreducible characters of the symmetric group.

Values come from the Murnaghan-Nakayama rule, evaluated on beta-sets: removing
a border strip of length r from the diagram is the same as sliding one bead
of the beta-set down by r into an empty position, with sign given by the
parity of the beads jumped over. Results are memoized in a process-wide
:class:`CharacterCache` which the CLI can persist between runs.
"""

from __future__ import annotations

import os
import threading
from collections import Counter
from dataclasses import dataclass
from math import factorial, prod
from pathlib import Path
from typing import Iterable

from .errors import ContractError
from .partitions import Partition, dim_specht, enumerate_partitions

__all__ = [
    "CACHE_HEADER",
    "CacheFormatError",
    "CharacterCache",
    "CycleType",
    "centralizer_order",
    "character",
    "character_row",
    "conjugacy_classes",
    "default_cache",
]

CACHE_HEADER = "kronlab-cache v1"


class CacheFormatError(ValueError):
    def __init__(self, path, lineno: int, reason: str):
        self.path = path
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: {reason}")


def centralizer_order(mu: Iterable[int]) -> int:
    """z_mu = prod_i i^{m_i} m_i!, the order of the centralizer of a permutation of type mu."""
    counts = Counter(p for p in mu if p)
    return prod(i**m * factorial(m) for i, m in counts.items())


@dataclass(frozen=True)
class CycleType:
    cycle_lengths: Partition

    @property
    def n(self) -> int:
        return self.cycle_lengths.size

    @property
    def z(self) -> int:
        return centralizer_order(self.cycle_lengths)

    @property
    def class_size(self) -> int:
        return factorial(self.n) // self.z


def conjugacy_classes(n: int) -> list[CycleType]:
    return [CycleType(mu) for mu in enumerate_partitions(n)]


class CharacterCache:
    """Memo table for character values keyed by (shape, cycle type).

    Lookups are lock-free dict reads; inserts take a lock. ``evaluations``
    counts table misses, i.e. recursion nodes actually computed, which is the
    quantity a warm persistent cache should drive to zero.
    """

    def __init__(self):
        self._table: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
        self._lock = threading.Lock()
        self._saved: set = set()
        self.evaluations = 0
        self.loaded = 0

    def __len__(self) -> int:
        return len(self._table)

    def clear(self) -> None:
        with self._lock:
            self._table.clear()
            self._saved.clear()
            self.evaluations = 0
            self.loaded = 0

    def lookup(self, key):
        return self._table.get(key)

    def insert(self, key, value: int) -> None:
        with self._lock:
            self._table.setdefault(key, value)
            self.evaluations += 1

    def items(self):
        return list(self._table.items())

    def load(self, path: str | os.PathLike) -> int:
        """Merge records from a cache file; returns the number of records read."""
        path = Path(path)
        records = {}
        with path.open(encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n")
            if header != CACHE_HEADER:
                raise CacheFormatError(path, 1, f"bad header {header!r}")
            for lineno, line in enumerate(fh, start=2):
                line = line.strip()
                if not line:
                    continue
                fields = line.split()
                if len(fields) != 3:
                    raise CacheFormatError(path, lineno, "expected 3 fields")
                try:
                    lam = Partition.parse(fields[0])
                    mu = Partition.parse(fields[1])
                    value = int(fields[2])
                except ValueError as exc:
                    raise CacheFormatError(path, lineno, str(exc)) from None
                if lam.size != mu.size:
                    raise CacheFormatError(path, lineno, "shape and cycle type differ in size")
                records[(tuple(lam), tuple(mu))] = value
        with self._lock:
            self._table.update(records)
            self._saved.update(records)
            self.loaded += len(records)
        return len(records)

    def save(self, path: str | os.PathLike) -> int:
        """Append records not yet on disk; returns how many were written."""
        path = Path(path)
        with self._lock:
            fresh = sorted(k for k in self._table if k not in self._saved)
            values = [self._table[k] for k in fresh]
        new_file = not path.exists() or path.stat().st_size == 0
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("a", encoding="utf-8") as fh:
            if new_file:
                fh.write(CACHE_HEADER + "\n")
            for (lam, mu), value in zip(fresh, values):
                fh.write(f"{Partition(lam)} {Partition(mu)} {value}\n")
        with self._lock:
            self._saved.update(fresh)
        return len(fresh)

    def n_range(self) -> tuple[int, int] | None:
        sizes = [sum(lam) for lam, _ in self._table]
        return (min(sizes), max(sizes)) if sizes else None


default_cache = CharacterCache()


def _to_beta(lam: tuple[int, ...]) -> list[int]:
    m = len(lam)
    return [p + m - 1 - i for i, p in enumerate(lam)]


def _from_beta(beta: list[int]) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    m = len(beta)
    parts = tuple(b - (m - 1 - i) for i, b in enumerate(beta))
    end = len(parts)
    while end and parts[end - 1] == 0:
        end -= 1
    return parts[:end]


def _mn(lam: tuple[int, ...], mu: tuple[int, ...], cache: CharacterCache) -> int:
    # mu is weakly decreasing; the largest cycle is stripped first
    if not mu:
        return 1
    key = (lam, mu)
    hit = cache.lookup(key)
    if hit is not None:
        return hit
    if mu[0] == 1:
        value = dim_specht(lam)
    elif len(lam) == 1:
        value = 1
    elif lam[0] == 1:
        value = -1 if (len(lam) - len(mu)) % 2 else 1
    else:
        r, rest = mu[0], mu[1:]
        beta = _to_beta(lam)
        occupied = set(beta)
        value = 0
        for b in beta:
            target = b - r
            if target < 0 or target in occupied:
                continue
            jumped = sum(1 for c in beta if target < c < b)
            sub = _from_beta([target if c == b else c for c in beta])
            term = _mn(sub, rest, cache)
            value += -term if jumped % 2 else term
    cache.insert(key, value)
    return value


def character(lam: Iterable[int], mu: Iterable[int] | CycleType, cache: CharacterCache | None = None) -> int:
    """chi_lam evaluated on permutations of cycle type mu."""
    if isinstance(mu, CycleType):
        mu = mu.cycle_lengths
    lam = tuple(Partition(lam))
    mu = tuple(sorted((int(c) for c in mu if c), reverse=True))
    if sum(lam) != sum(mu):
        raise ContractError(f"character: |lambda|={sum(lam)} but |mu|={sum(mu)}")
    if any(c < 0 for c in mu):
        raise ContractError("negative cycle length")
    return _mn(lam, mu, default_cache if cache is None else cache)


def character_row(lam: Iterable[int], cache: CharacterCache | None = None) -> dict[Partition, int]:
    """chi_lam on every conjugacy class of S_|lam|, keyed in enumeration order."""
    lam = Partition(lam)
    return {mu: character(lam, mu, cache) for mu in enumerate_partitions(lam.size)}
