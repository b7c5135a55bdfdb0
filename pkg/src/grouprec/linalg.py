"""Exact Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularMatrix(ArithmeticError):
    pass


def solve_exact(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``a @ x = b`` exactly.

    Partial pivoting picks the row with the largest |entry| in the current
    column; ties keep the earliest row, so results are reproducible.
    """
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise ValueError("solve_exact needs a square system")
    m = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: (abs(m[r][col]), -r))
        if m[pivot][col] == 0:
            raise SingularMatrix(f"no pivot in column {col}")
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
        prow = m[col]
        p = prow[col]
        for r in range(col + 1, n):
            f = m[r][col]
            if f:
                f /= p
                row = m[r]
                for c in range(col, n + 1):
                    if prow[c]:
                        row[c] -= f * prow[c]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = m[r][n]
        for c in range(r + 1, n):
            if m[r][c]:
                acc -= m[r][c] * x[c]
        x[r] = acc / m[r][r]
    return x
