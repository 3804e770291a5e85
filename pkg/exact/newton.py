"""
Octodp — Newton Polygons
Root valuations of a univariate polynomial from its coefficient valuations.
"""

import logging
from collections.abc import Sequence

from sympy import QQ

from errors import PreconditionError
from exact.rationals import qq
from exact.valuation import INFINITY, ExtValuation

logger = logging.getLogger(__name__)


def _lower_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    hull: list[tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] unless it lies strictly below the chord
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_root_valuations(coeff_vals: Sequence[ExtValuation]) -> tuple[ExtValuation, ...]:
    """Valuations of the roots of sum c_i t^i given val(c_0), ..., val(c_n).

    Args:
        coeff_vals: Valuations indexed by degree, constant term first.

    Returns:
        The n root valuations (negated lower-hull slopes, with multiplicity),
        sorted in decreasing order; vanishing trailing coefficients contribute
        +infinity roots.
    """
    if not coeff_vals:
        raise PreconditionError("Newton polygon of an empty coefficient list")
    vals = [v if isinstance(v, ExtValuation) else ExtValuation(v) for v in coeff_vals]
    if vals[-1].is_infinite:
        raise PreconditionError("Leading coefficient must be nonzero")

    zero_roots = 0
    while vals[zero_roots].is_infinite:
        zero_roots += 1

    points = [(i, v.finite) for i, v in enumerate(vals) if i >= zero_roots and not v.is_infinite]
    hull = _lower_hull(points)

    roots: list[ExtValuation] = [INFINITY] * zero_roots
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        root = -(qq(y2 - y1) / QQ(x2 - x1, 1))
        if root.denominator == 1:
            root_val = ExtValuation(int(root.numerator))
        else:
            root_val = ExtValuation(root)
        roots.extend([root_val] * (x2 - x1))

    logger.debug("Newton polygon %s -> roots %s", vals, roots)
    return tuple(sorted(roots, reverse=True))


def newton_criterion(coeff_vals: Sequence[ExtValuation]) -> bool:
    """Closed-form test for three distinct root valuations of a cubic.

    True iff v0 + v2 > 2 v1 and v1 + v3 > 2 v2.
    """
    if len(coeff_vals) != 4:
        raise PreconditionError("The distinct-root criterion applies to cubics")
    v0, v1, v2, v3 = (v if isinstance(v, ExtValuation) else ExtValuation(v) for v in coeff_vals)
    return (v0 + v2) > 2 * v1 and (v1 + v3) > 2 * v2


def has_distinct_roots(coeff_vals: Sequence[ExtValuation]) -> bool:
    roots = newton_root_valuations(coeff_vals)
    return len(set(roots)) == len(roots)
