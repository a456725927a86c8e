"""Shared brute-force utilities for the test suite.

Everything here is deliberately independent of the code paths under test:
ranks and bases come from exhaustive bitmask enumeration, not from the
greedy routines.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from budgetmatroid.families import construct
from budgetmatroid.generate import GenSpec, _random_family, generate_instance
from budgetmatroid.matroid import Matroid

FAMILIES = ("uniform", "partition", "graphic", "linear", "explicit")


def independence_table(m: Matroid) -> tuple[list[int], list[bool]]:
    """(sorted elements, table) with table[mask] = independence of that subset."""
    elems = sorted(m.ground)
    n = len(elems)
    table = []
    for mask in range(1 << n):
        s = frozenset(elems[i] for i in range(n) if mask >> i & 1)
        table.append(m.indep_fn(s))
    return elems, table


def exhaustive_rank(m: Matroid, subset) -> int:
    """Rank by enumerating every subset of `subset`."""
    s = sorted(subset)
    best = 0
    for size in range(len(s), 0, -1):
        for combo in itertools.combinations(s, size):
            if m.indep_fn(frozenset(combo)):
                return size
    return best


def all_independent_sets(m: Matroid) -> list[frozenset]:
    elems, table = independence_table(m)
    n = len(elems)
    return [
        frozenset(elems[i] for i in range(n) if mask >> i & 1)
        for mask in range(1 << n)
        if table[mask]
    ]


def all_bases(m: Matroid) -> list[frozenset]:
    indep = all_independent_sets(m)
    top = max(len(s) for s in indep)
    return [s for s in indep if len(s) == top]


def random_matroid(rng: random.Random, n: int, kind: str | None = None) -> Matroid:
    if kind is None:
        kind = rng.choice(("uniform", "partition", "graphic", "linear"))
    if kind == "explicit" and n > 10:
        kind = "partition"
    return construct(_random_family(rng, kind, n), n)


def random_instance(rng: random.Random, family: str, n: int, **kwargs):
    return generate_instance(GenSpec(family, n, seed=rng.randrange(1 << 30), **kwargs))


def skewed_size(rng: random.Random, max_n: int = 14) -> int:
    """Sizes biased small so exhaustive oracles stay cheap."""
    weights = {n: max(1, 16 - n * (1 if n <= 9 else 3)) for n in range(3, max_n + 1)}
    total = sum(weights.values())
    pick = rng.randrange(total)
    for n, w in weights.items():
        if pick < w:
            return n
        pick -= w
    return max_n


def random_rational(rng: random.Random, num_max: int = 8, dens=(1, 2, 3, 4)) -> Fraction:
    return Fraction(rng.randint(0, num_max), rng.choice(dens))
