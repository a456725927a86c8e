"""Exact rational primal simplex for max{c.x : Ax <= b, x >= 0}.

All right-hand sides must be non-negative, so the all-slack basis is
feasible and no phase-1 is needed.  Pivoting uses Bland's rule, which
guarantees termination without perturbation.  The returned point is a basic
feasible solution (a vertex) of the constraint polytope.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import InternalInvariantError, PreconditionError

ZERO = Fraction(0)


def simplex_max(
    objective: Sequence[Fraction],
    rows: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
) -> tuple[tuple[Fraction, ...], Fraction]:
    """Solve the LP; returns (x, objective value) with x a vertex.

    Raises InternalInvariantError on an unbounded problem: callers always
    supply per-variable upper bounds, so unboundedness signals a bug.
    """
    n = len(objective)
    m = len(rows)
    if len(rhs) != m:
        raise PreconditionError("rhs length mismatch")
    for b in rhs:
        if b < 0:
            raise PreconditionError("simplex requires non-negative right-hand sides")

    width = n + m + 1
    tab: list[list[Fraction]] = []
    for i, row in enumerate(rows):
        if len(row) != n:
            raise PreconditionError("row length mismatch")
        line = [Fraction(v) for v in row] + [ZERO] * m + [Fraction(rhs[i])]
        line[n + i] = Fraction(1)
        tab.append(line)
    # Reduced-cost row for the maximization objective.
    zrow = [Fraction(v) for v in objective] + [ZERO] * (m + 1)
    basis = [n + i for i in range(m)]

    while True:
        enter = -1
        for j in range(n + m):
            if zrow[j] > 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best_ratio = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][width - 1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            raise InternalInvariantError("unbounded linear program")
        pivot_row = tab[leave]
        pivot = pivot_row[enter]
        if pivot != 1:
            inv = 1 / pivot
            tab[leave] = pivot_row = [v * inv for v in pivot_row]
        for i in range(m):
            if i == leave:
                continue
            factor = tab[i][enter]
            if factor != 0:
                row_i = tab[i]
                tab[i] = [row_i[j] - factor * pivot_row[j] for j in range(width)]
        factor = zrow[enter]
        if factor != 0:
            zrow = [zrow[j] - factor * pivot_row[j] for j in range(width)]
        basis[leave] = enter

    x = [ZERO] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][width - 1]
    value = sum((objective[j] * x[j] for j in range(n)), ZERO)
    return tuple(x), value
