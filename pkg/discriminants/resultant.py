"""
Octodp — Macaulay Resultant
Resultant of four quaternary quadrics as det(M) / det(M') on the degree-5
Macaulay matrix, normalised so that Res(x², y², z², w²) = 1.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from typing import Any

from sympy import QQ
from sympy.polys.rings import PolyElement

from errors import DegenerateSystemError, PreconditionError
from exact.matrix import RatMatrix, det_exact
from exact.polynomial import is_homogeneous

logger = logging.getLogger(__name__)

NVARS = 4
QUADRIC_DEGREE = 2
# 1 + sum of (d_i - 1)
MACAULAY_DEGREE = 1 + NVARS * (QUADRIC_DEGREE - 1)

# full_discriminant(c) = RESULTANT_TO_DISCRIMINANT * resultant_oracle(partials of c)
RESULTANT_TO_DISCRIMINANT = -(2**16)


def monomials_of_degree(degree: int, nvars: int = NVARS) -> list[tuple[int, ...]]:
    """Exponent vectors of the given total degree, lex-descending."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return sorted(out, reverse=True)


MONOMIAL_SET: tuple[tuple[int, ...], ...] = tuple(monomials_of_degree(MACAULAY_DEGREE))
_COLUMN = {m: k for k, m in enumerate(MONOMIAL_SET)}
# Divisible by at least two pure squares
NON_REDUCED: tuple[int, ...] = tuple(
    k for k, m in enumerate(MONOMIAL_SET) if sum(e >= QUADRIC_DEGREE for e in m) >= 2
)


def _square_support(q: PolyElement) -> set[int]:
    """Variables i whose pure square x_i² appears in q."""
    out = set()
    for i in range(NVARS):
        exps = tuple(QUADRIC_DEGREE if j == i else 0 for j in range(NVARS))
        if q.get(exps, QQ.zero) != 0:
            out.add(i)
    return out


def _assignments(quadrics: Sequence[PolyElement]) -> list[tuple[int, ...]]:
    """Quadric-to-variable assignments, best square matching first."""
    supports = [_square_support(q) for q in quadrics]
    perms = list(itertools.permutations(range(NVARS)))

    def matched(perm: tuple[int, ...]) -> int:
        return sum(i in supports[perm[i]] for i in range(NVARS))

    return sorted(perms, key=matched, reverse=True)


def macaulay_matrix(
    quadrics: Sequence[PolyElement], assignment: Sequence[int], priority: Sequence[int]
) -> RatMatrix:
    """Rows (m / x_i²) · f_{assignment[i]} with i the first variable in
    ``priority`` whose square divides m; columns indexed by MONOMIAL_SET.
    """
    rows: list[list[Any]] = []
    for m in MONOMIAL_SET:
        i = next(v for v in priority if m[v] >= QUADRIC_DEGREE)
        shift = tuple(e - (QUADRIC_DEGREE if j == i else 0) for j, e in enumerate(m))
        row = [QQ.zero] * len(MONOMIAL_SET)
        for monom, coeff in quadrics[assignment[i]].items():
            target = tuple(a + b for a, b in zip(shift, monom))
            row[_COLUMN[target]] = coeff
        rows.append(row)
    return RatMatrix.from_rows(rows)


def extraneous_minor(m: RatMatrix) -> RatMatrix:
    """Principal submatrix on the non-reduced monomials."""
    return RatMatrix.from_rows([[m[i, j] for j in NON_REDUCED] for i in NON_REDUCED])


def resultant_oracle(quadrics: Sequence[PolyElement]) -> Any:
    """Exact resultant of four homogeneous quadrics in x, y, z, w.

    Tries square-matching assignments first and then every variable
    priority order until the extraneous minor is nonzero.

    Raises:
        PreconditionError: wrong number of forms, or a form that is not a quadric.
        DegenerateSystemError: every selection has a vanishing extraneous minor.
    """
    if len(quadrics) != NVARS:
        raise PreconditionError(f"Need {NVARS} quadrics, got {len(quadrics)}")
    for q in quadrics:
        if q.ring.ngens != NVARS:
            raise PreconditionError("Quadrics must live in a ring of four variables")
        if q and not is_homogeneous(q, QUADRIC_DEGREE):
            raise PreconditionError("resultant_oracle expects homogeneous quadrics")
    if any(not q for q in quadrics):
        return QQ.zero

    tries = 0
    for assignment in _assignments(quadrics):
        for priority in itertools.permutations(range(NVARS)):
            tries += 1
            m = macaulay_matrix(quadrics, assignment, priority)
            denominator = det_exact(extraneous_minor(m))
            if denominator == 0:
                continue
            logger.debug("Macaulay selection found after %d tries", tries)
            return det_exact(m) / denominator
    raise DegenerateSystemError(f"All {tries} Macaulay selections have a vanishing minor")
