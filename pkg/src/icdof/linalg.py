"""Exact kernel computation via fraction-free Gaussian elimination.

The independence checker needs certificates, not numerical judgments, so
everything here is integer/rational arithmetic. Rows are cleared to integers,
reduced with Bareiss-style exact division (intermediate values stay integers
and stay small), and kernel vectors are back-substituted as fractions, then
cleared to primitive integer vectors.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import ValidationError


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    cleared = []
    for row in rows:
        row = [Fraction(x) for x in row]
        denom = 1
        for x in row:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        cleared.append([int(x * denom) for x in row])
    return cleared


def _row_echelon(matrix: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free elimination; returns the reduced rows and pivot columns."""
    if not matrix:
        return [], []
    rows = [row[:] for row in matrix]
    n_cols = len(rows[0])
    pivots: list[int] = []
    prev_pivot = 1
    rank = 0
    for col in range(n_cols):
        pivot_row = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            factor = rows[r][col]
            for c in range(col, n_cols):
                # exact by the Bareiss determinant identity
                rows[r][c] = (pivot * rows[r][c] - factor * rows[rank][c]) // prev_pivot
        prev_pivot = pivot
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def kernel_basis(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Basis of {x : M x = 0} for the matrix with the given rows.

    Returns one vector per free column, each normalized so the free column
    holds 1; the empty list means the kernel is trivial.
    """
    if not rows:
        return []
    n_cols = len(rows[0])
    if any(len(row) != n_cols for row in rows):
        raise ValueError("ragged matrix")
    echelon, pivots = _row_echelon(_integer_rows(rows))
    free_cols = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        # back-substitute pivot entries bottom-up
        for r in range(len(pivots) - 1, -1, -1):
            col = pivots[r]
            residue = sum((Fraction(echelon[r][c]) * vec[c] for c in range(col + 1, n_cols)),
                          Fraction(0))
            vec[col] = -residue / echelon[r][col]
        basis.append(vec)
    return basis


def primitive_integer_vector(vec: Sequence[Fraction]) -> list[int]:
    """Clear denominators and divide by the gcd; sign fixed so the first
    nonzero entry is positive."""
    fracs = [Fraction(x) for x in vec]
    denom = 1
    for x in fracs:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fracs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    first = next((x for x in ints if x), 0)
    if first == 0:
        raise ValidationError("zero vector has no primitive form")
    if first < 0:
        ints = [-x for x in ints]
    return ints
