"""Exact sparse Gaussian elimination over Q."""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Optional

from .coeffs import Coeff, as_coeff


class LinearSolution:
    __slots__ = ("values", "rank", "ncols")

    def __init__(self, values: dict, rank: int, ncols: int):
        self.values = values
        self.rank = rank
        self.ncols = ncols

    @property
    def unique(self) -> bool:
        return self.rank == self.ncols


def solve_sparse(
    equations: Iterable[tuple[Mapping[Hashable, Coeff], Coeff]],
    columns: Iterable[Hashable],
) -> Optional[LinearSolution]:
    """Solve ``sum(row[c] * x[c]) == rhs`` for every equation.

    Returns ``None`` when the system is inconsistent, otherwise one solution
    (free variables set to zero) together with the rank.
    """
    columns = list(columns)
    order = {c: i for i, c in enumerate(columns)}
    pivots: dict[Hashable, tuple[dict, Coeff]] = {}
    pivot_order: list[Hashable] = []
    for row_in, b in equations:
        row = {c: as_coeff(v) for c, v in row_in.items() if v}
        b = as_coeff(b)
        while True:
            hit = next((c for c in row if c in pivots), None)
            if hit is None:
                break
            prow, pb = pivots[hit]
            f = row[hit]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            b = b - f * pb
        if not row:
            if b:
                return None
            continue
        c = min(row, key=order.__getitem__)
        piv = Fraction(row[c])
        row = {k: as_coeff(v / piv) for k, v in row.items()}
        pivots[c] = (row, as_coeff(b / piv))
        pivot_order.append(c)
    values: dict[Hashable, Coeff] = {c: 0 for c in columns}
    for c in reversed(pivot_order):
        row, b = pivots[c]
        acc = b
        for k, v in row.items():
            if k != c:
                acc = acc - v * values[k]
        values[c] = as_coeff(acc)
    return LinearSolution(values, len(pivot_order), len(columns))
