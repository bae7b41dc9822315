"""Slow, independent reference computations used only by the tests.

Nothing here imports the Murnaghan-Nakayama engine: characters come from
explicit permutation modules, Schur polynomials from tableaux, partition
counts from a two-index recurrence.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial


@lru_cache(maxsize=None)
def partition_count(n, largest=None):
    """p(n) with parts at most ``largest``, via p(n, m) = p(n, m-1) + p(n-m, m)."""
    if largest is None:
        largest = n
    if n == 0:
        return 1
    if n < 0 or largest == 0:
        return 0
    return partition_count(n, largest - 1) + partition_count(n - largest, largest)


def brute_partitions(n):
    """All partitions of n by filtering weakly decreasing tuples; tiny n only."""
    found = set()

    def rec(remaining, prefix):
        if remaining == 0:
            found.add(tuple(prefix))
            return
        for part in range(1, remaining + 1):
            if not prefix or part <= prefix[-1]:
                rec(remaining - part, prefix + [part])

    rec(n, [])
    return found


def cycle_type(perm):
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def class_representatives(n):
    """One permutation per cycle type, with the class size from brute counting."""
    reps = {}
    sizes = {}
    for perm in permutations(range(n)):
        ct = cycle_type(perm)
        reps.setdefault(ct, perm)
        sizes[ct] = sizes.get(ct, 0) + 1
    return reps, sizes


def _tabloids(shape):
    labels = [row for row, size in enumerate(shape) for _ in range(size)]
    return set(permutations(labels))


def permutation_character(shape, perm):
    """Number of row-tabloids of ``shape`` fixed by ``perm``."""
    return sum(1 for t in _tabloids(shape) if all(t[perm[i]] == t[i] for i in range(len(perm))))


@lru_cache(maxsize=None)
def character_table(n):
    """{shape: {cycle type: value}} by splitting permutation characters.

    Shapes are processed from the top of the dominance order; each
    permutation character minus its projections onto the irreducibles already
    found is the next irreducible.
    """
    reps, sizes = class_representatives(n)
    order = factorial(n)
    shapes = sorted(brute_partitions(n), reverse=True)

    def inner(f, g):
        return Fraction(sum(sizes[c] * f[c] * g[c] for c in reps), order)

    table = {}
    for shape in shapes:
        chi = {c: permutation_character(shape, reps[c]) for c in reps}
        for prev in table.values():
            m = inner(chi, prev)
            chi = {c: chi[c] - m * prev[c] for c in reps}
        assert inner(chi, chi) == 1, shape
        table[shape] = {c: int(v) for c, v in chi.items()}
    return table


def kron_by_table(lam, mu, nu):
    n = sum(lam)
    table = character_table(n)
    _, sizes = class_representatives(n)
    total = sum(sizes[c] * table[lam][c] * table[mu][c] * table[nu][c] for c in sizes)
    g = Fraction(total, factorial(n))
    assert g.denominator == 1
    return int(g)


def ssyt_monomial_sum(shape, x):
    """s_shape(x) as the sum over semistandard tableaux of prod x_entry."""
    x = [Fraction(v) for v in x]
    d = len(x)
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    total = Fraction(0)

    def fill(idx, tab):
        nonlocal total
        if idx == len(cells):
            term = Fraction(1)
            for v in tab.values():
                term *= x[v]
            total += term
            return
        i, j = cells[idx]
        low = 0
        if j > 0:
            low = max(low, tab[(i, j - 1)])
        if i > 0:
            low = max(low, tab[(i - 1, j)] + 1)
        for v in range(low, d):
            tab[(i, j)] = v
            fill(idx + 1, tab)
        tab.pop((i, j), None)

    fill(0, {})
    return total


def standard_rep_character(perm):
    """Trace of perm on the sum-zero subspace of C^3, from explicit matrices."""
    import numpy as np

    n = len(perm)
    P = np.zeros((n, n))
    for i, j in enumerate(perm):
        P[j, i] = 1
    basis = np.array([[1, -1, 0], [0, 1, -1]], dtype=float).T
    coords, *_ = np.linalg.lstsq(basis, P @ basis, rcond=None)
    return int(round(np.trace(coords)))
