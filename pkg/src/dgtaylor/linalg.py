"""Exact rank over the rationals."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence


@dataclass(frozen=True)
class DenseMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...] = field(repr=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> DenseMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(Fraction(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> DenseMatrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[Fraction]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> DenseMatrix:
        return DenseMatrix(
            self.cols, self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                out.append(sum((self[i, k] * other[k, j] for k in range(self.cols)), Fraction(0)))
        return DenseMatrix(self.rows, other.cols, tuple(out))

    def rank(self) -> int:
        return rank(self)


def rank(m: DenseMatrix) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination with full pivoting."""
    if m.rows == 0 or m.cols == 0:
        return 0
    # clear denominators row by row; rank is unchanged
    a = []
    for row in m.to_rows():
        den = lcm(*(x.denominator for x in row))
        a.append([int(x * den) for x in row])
    nr, nc = m.rows, m.cols
    prev = 1
    r = 0
    while r < min(nr, nc):
        # full pivoting: smallest nonzero magnitude keeps intermediates small
        best = None
        for i in range(r, nr):
            row = a[i]
            for j in range(r, nc):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, pi, pj = best
        a[r], a[pi] = a[pi], a[r]
        if pj != r:
            for row in a:
                row[r], row[pj] = row[pj], row[r]
        piv = a[r][r]
        for i in range(r + 1, nr):
            row = a[i]
            lead = row[r]
            for j in range(r + 1, nc):
                # exact division is guaranteed by Sylvester's identity
                row[j] = (piv * row[j] - lead * a[r][j]) // prev
            row[r] = 0
        prev = piv
        r += 1
    return r
