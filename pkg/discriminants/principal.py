"""
Octodp — Principal A-Determinant
Expanded E_A as a polynomial in a..h; its lowest terms under a weight are the
GKZ vectors of the induced triangulations.
"""

from __future__ import annotations

import functools
import logging
from collections.abc import Sequence
from typing import Any

from sympy import QQ
from sympy.polys.rings import PolyElement

from discriminants.a_discriminant import (
    BINOMIAL_FACTORS,
    COEFFICIENT_VARIABLES,
    a_discriminant,
)
from errors import PreconditionError
from exact.polynomial import poly_ring
from exact.rationals import qq

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=1)
def principal_a_determinant_poly() -> PolyElement:
    """E_A multiplied out (degree 28 in a..h)."""
    R, gens = poly_ring(COEFFICIENT_VARIABLES)
    v = dict(zip("abcdefgh", gens))
    poly = v["a"] * v["b"] * v["c"] * v["d"]
    for k in "efgh":
        poly *= v[k] ** 2
    for _, m1, m2 in BINOMIAL_FACTORS:
        poly *= v[m1[0]] * v[m1[1]] - v[m2[0]] * v[m2[1]]
    poly *= a_discriminant().poly
    logger.debug("Expanded principal A-determinant: %d terms", len(poly))
    return poly


def lowest_terms(poly: PolyElement, weights: Sequence[Any]) -> list[tuple[tuple[int, ...], Any]]:
    """Terms of poly whose exponent vector minimises the weight functional."""
    w = [qq(x) for x in weights]
    if len(w) != poly.ring.ngens:
        raise PreconditionError(f"Weight vector needs {poly.ring.ngens} entries, got {len(w)}")
    best = None
    found: list[tuple[tuple[int, ...], Any]] = []
    for monom, coeff in poly.items():
        value = sum((wi * e for wi, e in zip(w, monom) if e), QQ.zero)
        if best is None or value < best:
            best, found = value, [(monom, coeff)]
        elif value == best:
            found.append((monom, coeff))
    return found


def gkz_from_principal_determinant(weights: Sequence[Any]) -> tuple[int, ...]:
    """Exponent vector of the unique w-lowest monomial of E_A.

    Raises:
        PreconditionError: the weight is not generic (several lowest terms).
    """
    found = lowest_terms(principal_a_determinant_poly(), weights)
    if len(found) != 1:
        raise PreconditionError(
            f"Non-generic weight {list(weights)}: {len(found)} lowest terms in E_A"
        )
    return tuple(found[0][0])
