"""Small exact linear algebra over ``fractions.Fraction``."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fractions(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def vecmat(v: Sequence, m: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    return [sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0]))]


def inverse(m: Sequence[Sequence]) -> Matrix:
    """Gauss-Jordan inverse; raises ``ZeroDivisionError`` on singular input."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def is_integral(values) -> bool:
    return all(Fraction(x).denominator == 1 for x in values)
