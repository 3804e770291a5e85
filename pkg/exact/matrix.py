"""
Octodp — Exact Matrices
Rational matrices with fraction-free determinants and exact null spaces.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from sympy import QQ, ZZ, Matrix
from sympy.polys.matrices import DomainMatrix

from errors import PreconditionError
from exact.rationals import qq, to_sympy


@dataclass(frozen=True)
class RatMatrix:
    """Rectangular grid of exact rationals."""

    entries: tuple[tuple[Any, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> RatMatrix:
        if not rows or not rows[0]:
            raise PreconditionError("RatMatrix dimensions must be positive")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise PreconditionError("RatMatrix rows must have equal length")
        return cls(tuple(tuple(qq(v) for v in r) for r in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, index: tuple[int, int]) -> Any:
        i, j = index
        return self.entries[i][j]

    def transpose(self) -> RatMatrix:
        return RatMatrix(tuple(zip(*self.entries)))

    def to_sympy(self) -> Matrix:
        return Matrix([[to_sympy(v) for v in row] for row in self.entries])

    def det(self) -> Any:
        return det_exact(self)

    def nullspace(self) -> list[tuple[Any, ...]]:
        return nullspace(self)

    def rank(self) -> int:
        return self.to_sympy().rank()

    def apply(self, vector: Sequence[Any]) -> tuple[Any, ...]:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise PreconditionError("apply: dimension mismatch")
        vector = [qq(v) for v in vector]
        return tuple(sum((a * b for a, b in zip(row, vector)), QQ.zero) for row in self.entries)


def det_exact(m: RatMatrix) -> Any:
    """Exact determinant by Bareiss elimination on the integer-scaled matrix."""
    if m.rows != m.cols:
        raise PreconditionError(f"det_exact: matrix is {m.rows}x{m.cols}, not square")
    int_rows: list[list[int]] = []
    scale = 1
    for row in m.entries:
        lcm = 1
        for v in row:
            lcm = math.lcm(lcm, int(v.denominator))
        scale *= lcm
        int_rows.append([int(v.numerator) * (lcm // int(v.denominator)) for v in row])
    dm = DomainMatrix([[ZZ(v) for v in row] for row in int_rows], (m.rows, m.cols), ZZ)
    return QQ(int(dm.det()), scale)


def det_integer(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix (fraction-free)."""
    n = len(rows)
    dm = DomainMatrix([[ZZ(int(v)) for v in row] for row in rows], (n, n), ZZ)
    return int(dm.det())


def nullspace(m: RatMatrix) -> list[tuple[Any, ...]]:
    """Exact basis of the right null space."""
    basis = m.to_sympy().nullspace()
    return [tuple(QQ.from_sympy(v) for v in vec) for vec in basis]


def kernel_vector(rows: Sequence[Sequence[Any]]) -> tuple[Any, ...]:
    """The unique (up to scale) null vector of a corank-one system."""
    basis = nullspace(RatMatrix.from_rows(rows))
    if len(basis) != 1:
        raise PreconditionError(
            f"Expected a one-dimensional null space, found dimension {len(basis)}"
        )
    return basis[0]


def solve_linear(rows: Sequence[Sequence[Any]], rhs: Sequence[Any]) -> tuple[Any, ...]:
    """Unique solution of a square nonsingular system."""
    A = RatMatrix.from_rows(rows).to_sympy()
    b = Matrix([to_sympy(qq(v)) for v in rhs])
    if A.rows != A.cols or A.det() == 0:
        raise PreconditionError("solve_linear: singular or non-square system")
    sol = A.LUsolve(b)
    return tuple(QQ.from_sympy(v) for v in sol)


def inverse(m: RatMatrix) -> RatMatrix:
    if m.rows != m.cols or det_exact(m) == 0:
        raise PreconditionError("inverse: singular or non-square matrix")
    inv = m.to_sympy().inv()
    return RatMatrix(
        tuple(tuple(QQ.from_sympy(inv[i, j]) for j in range(m.cols)) for i in range(m.rows))
    )


def matmul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a.cols != b.rows:
        raise PreconditionError("matmul: dimension mismatch")
    return RatMatrix(
        tuple(
            tuple(sum((a[i, k] * b[k, j] for k in range(a.cols)), QQ.zero) for j in range(b.cols))
            for i in range(a.rows)
        )
    )
