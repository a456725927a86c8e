"""Concrete matroid families backing the independence oracle.

Supported kinds: uniform, partition, graphic, linear (exact rationals),
explicit (listed maximal independent sets).  Element ids are indices into
the instance ground set; for graphic matroids element i is edge i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ValidationError
from .matroid import Matroid

KINDS = ("uniform", "partition", "graphic", "linear", "explicit")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    rank: int | None = None
    blocks: tuple[tuple[int, ...], ...] | None = None
    capacities: tuple[int, ...] | None = None
    num_vertices: int | None = None
    edges: tuple[tuple[int, int], ...] | None = None
    columns: tuple[tuple[Fraction, ...], ...] | None = None
    maximal_sets: tuple[tuple[int, ...], ...] | None = None


def columns_independent(cols: Sequence[Sequence[Fraction]]) -> bool:
    """Exact Gaussian elimination; True iff the columns are linearly independent."""
    if not cols:
        return True
    dim = len(cols[0])
    if len(cols) > dim:
        return False
    # Work on the transpose-free copy; eliminate column by column.
    mat = [list(col) for col in cols]
    used_rows: set[int] = set()
    for vec in mat:
        pivot_row = None
        for r in range(dim):
            if r not in used_rows and vec[r] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            return False
        used_rows.add(pivot_row)
        inv = 1 / vec[pivot_row]
        for other in mat:
            if other is vec or other[pivot_row] == 0:
                continue
            factor = other[pivot_row] * inv
            for r in range(dim):
                other[r] -= factor * vec[r]
    return True


def column_rank(cols: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational column collection, by greedy exact elimination."""
    picked: list[Sequence[Fraction]] = []
    for col in cols:
        if columns_independent(picked + [col]):
            picked.append(col)
    return len(picked)


def _validate_uniform(spec: FamilySpec, n: int) -> None:
    if spec.rank is None or spec.rank < 0:
        raise ValidationError("uniform matroid needs a non-negative rank", "matroid.rank")


def _validate_partition(spec: FamilySpec, n: int) -> None:
    if spec.blocks is None or spec.capacities is None:
        raise ValidationError("partition matroid needs blocks and capacities", "matroid.blocks")
    if len(spec.blocks) != len(spec.capacities):
        raise ValidationError(
            "blocks and capacities must have equal length", "matroid.capacities"
        )
    seen: set[int] = set()
    for i, block in enumerate(spec.blocks):
        for e in block:
            if not 0 <= e < n:
                raise ValidationError(f"element {e} out of range", f"matroid.blocks[{i}]")
            if e in seen:
                raise ValidationError(f"element {e} in two blocks", f"matroid.blocks[{i}]")
            seen.add(e)
    if seen != set(range(n)):
        missing = sorted(set(range(n)) - seen)
        raise ValidationError(f"blocks do not cover elements {missing}", "matroid.blocks")
    for i, cap in enumerate(spec.capacities):
        if cap < 0:
            raise ValidationError("capacity must be >= 0", f"matroid.capacities[{i}]")


def _validate_graphic(spec: FamilySpec, n: int) -> None:
    if spec.num_vertices is None or spec.num_vertices < 0:
        raise ValidationError("graphic matroid needs num_vertices", "matroid.num_vertices")
    if spec.edges is None or len(spec.edges) != n:
        raise ValidationError(
            f"graphic matroid needs exactly {n} edges (one per element)", "matroid.edges"
        )
    for i, (u, v) in enumerate(spec.edges):
        if not (0 <= u < spec.num_vertices and 0 <= v < spec.num_vertices):
            raise ValidationError(f"edge ({u},{v}) references invalid vertex", f"matroid.edges[{i}]")


def _validate_linear(spec: FamilySpec, n: int) -> None:
    if spec.columns is None or len(spec.columns) != n:
        raise ValidationError(
            f"linear matroid needs exactly {n} columns (one per element)", "matroid.columns"
        )
    if n and len({len(c) for c in spec.columns}) > 1:
        raise ValidationError("columns must share one dimension", "matroid.columns")


def _validate_explicit(spec: FamilySpec, n: int) -> None:
    if spec.maximal_sets is None:
        raise ValidationError("explicit matroid needs maximal_sets", "matroid.maximal_sets")
    sets = [frozenset(s) for s in spec.maximal_sets]
    for i, s in enumerate(sets):
        for e in s:
            if not 0 <= e < n:
                raise ValidationError(f"element {e} out of range", f"matroid.maximal_sets[{i}]")
    for i, a in enumerate(sets):
        for j, b in enumerate(sets):
            if i != j and a <= b:
                raise ValidationError(
                    "maximal_sets must be an antichain", f"matroid.maximal_sets[{i}]"
                )


_VALIDATORS = {
    "uniform": _validate_uniform,
    "partition": _validate_partition,
    "graphic": _validate_graphic,
    "linear": _validate_linear,
    "explicit": _validate_explicit,
}


def validate_spec(spec: FamilySpec, n: int) -> None:
    if spec.kind not in KINDS:
        raise ValidationError(f"unknown matroid kind {spec.kind!r}", "matroid.kind")
    _VALIDATORS[spec.kind](spec, n)


def construct(spec: FamilySpec, n: int) -> Matroid:
    """Build the independence oracle for a validated family spec over n elements."""
    validate_spec(spec, n)
    ground = frozenset(range(n))
    if spec.kind == "uniform":
        r = spec.rank

        def indep(s, _r=r):
            return len(s) <= _r

    elif spec.kind == "partition":
        pairs = tuple(
            (frozenset(block), cap) for block, cap in zip(spec.blocks, spec.capacities)
        )

        def indep(s, _pairs=pairs):
            return all(len(s & block) <= cap for block, cap in _pairs)

    elif spec.kind == "graphic":
        edges = spec.edges

        def indep(s, _edges=edges):
            # Acyclicity via union-find; loops are dependent singletons.
            parent: dict[int, int] = {}

            def find(x):
                root = x
                while parent.get(root, root) != root:
                    root = parent[root]
                while parent.get(x, x) != x:
                    parent[x], x = root, parent[x]
                return root

            for e in s:
                u, v = _edges[e]
                ru, rv = find(u), find(v)
                if ru == rv:
                    return False
                parent[ru] = rv
            return True

    elif spec.kind == "linear":
        cols = spec.columns

        def indep(s, _cols=cols):
            return columns_independent([_cols[e] for e in sorted(s)])

    else:  # explicit
        sets = tuple(frozenset(ms) for ms in spec.maximal_sets)

        def indep(s, _sets=sets):
            if not s:
                return True
            return any(s <= mx for mx in _sets)

    return Matroid(ground, indep, label=spec.kind)
