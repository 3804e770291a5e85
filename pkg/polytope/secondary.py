"""
Octodp — Secondary Cones
Exact LP certificates of regularity, integral witness heights, and strict
membership of a valuation vector in a secondary cone.
"""

from __future__ import annotations

import functools
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from sympy import Rational, symbols
from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError, lpmax

from errors import PreconditionError
from exact.rationals import qq, to_sympy
from exact.valuation import ExtValuation
from polytope.triangulations import (
    SupportConfig,
    Triangulation,
    enumerate_triangulations,
    regular_subdivision,
    support_config,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RegularityCertificate:
    """Result of the height LP for one triangulation.

    ``margin`` is the optimal slack (capped at 1); the triangulation is regular
    iff it is positive, and then ``witness`` lies in the open secondary cone.
    """

    triangulation: Triangulation
    regular: bool
    margin: Any
    witness: tuple[int, ...] | None


def folding_conditions(
    t: Triangulation, config: SupportConfig
) -> list[tuple[str, str, tuple[Any, ...]]]:
    """(cell, point, barycentric coordinates) for every point off every cell."""
    out = []
    for cell in t.sorted_cells():
        for j in config.labels:
            if j not in cell:
                out.append((cell, j, config.barycentric[(cell, j)]))
    return out


def _integral_heights(values: Sequence[Any]) -> tuple[int, ...]:
    lcm = 1
    for v in values:
        lcm = math.lcm(lcm, int(v.denominator))
    ints = [int(v.numerator) * (lcm // int(v.denominator)) for v in values]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return tuple(v // g for v in ints) if g else tuple(ints)


def certify_regular(t: Triangulation, config: SupportConfig | None = None) -> RegularityCertificate:
    """Maximise the common slack of all folding conditions with heights h >= 0."""
    config = config or support_config()
    if not t.is_triangulation(config):
        raise PreconditionError(f"Not a triangulation: {t}")
    h = dict(zip(config.labels, symbols(" ".join(f"h_{k}" for k in config.labels))))
    margin = symbols("t")
    constraints = [margin <= 1] + [h[k] >= 0 for k in config.labels]
    for cell, j, lam in folding_conditions(t, config):
        lifted = sum(to_sympy(l) * h[k] for l, k in zip(lam, cell))
        constraints.append(h[j] - lifted >= margin)
    try:
        best, solution = lpmax(margin, constraints)
    except (InfeasibleLPError, UnboundedLPError) as exc:
        raise PreconditionError(f"Height LP failed for {t}: {exc}") from exc
    best = Rational(best)
    if best <= 0:
        return RegularityCertificate(t, False, qq(best), None)
    heights = [qq(Rational(solution.get(h[k], 0))) for k in config.labels]
    witness = _integral_heights(heights)
    return RegularityCertificate(t, True, qq(best), witness)


def secondary_cone_witness(t: Triangulation, config: SupportConfig | None = None) -> tuple[int, ...]:
    """Integral heights inducing t.

    Raises:
        PreconditionError: t is not regular.
    """
    cert = certify_regular(t, config)
    if not cert.regular:
        raise PreconditionError(f"Triangulation is not regular: {t}")
    return cert.witness


@functools.lru_cache(maxsize=4)
def enumerate_regular_triangulations(
    config: SupportConfig | None = None,
) -> tuple[RegularityCertificate, ...]:
    """Every triangulation of the configuration that passes the height LP."""
    config = config or support_config()
    certs = [certify_regular(t, config) for t in enumerate_triangulations(config)]
    regular = tuple(c for c in certs if c.regular)
    logger.info(
        "Regular triangulations: %d of %d (%d non-regular)",
        len(regular),
        len(certs),
        len(certs) - len(regular),
    )
    return regular


def roundtrip_witness(cert: RegularityCertificate, config: SupportConfig | None = None) -> bool:
    """regular_subdivision(witness) reproduces the certified triangulation."""
    return cert.regular and regular_subdivision(cert.witness, config) == cert.triangulation


def cone_inequalities(
    t: Triangulation,
    vals: Sequence[ExtValuation | int | Any],
    config: SupportConfig | None = None,
) -> bool:
    """True iff the valuation vector lies strictly inside the secondary cone of t."""
    config = config or support_config()
    if len(vals) != len(config.labels):
        raise PreconditionError(f"Need {len(config.labels)} valuations, got {len(vals)}")
    if any(isinstance(v, ExtValuation) and v.is_infinite for v in vals):
        return False
    heights = {k: qq(int(v) if isinstance(v, ExtValuation) else v) for k, v in zip(config.labels, vals)}
    for cell, j, lam in folding_conditions(t, config):
        lifted = sum((l * heights[k] for l, k in zip(lam, cell)), qq(0))
        if heights[j] - lifted <= 0:
            return False
    return True
