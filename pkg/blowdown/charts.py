"""
Octodp — Blow-down Charts
The contraction π : S -> P^2 of E1..E6, given on three charts by quadratic
products of the plane forms h_ij = span(G_i, E_j) and normalised by
π(E1..E4) = (1:0:0), (0:1:0), (0:0:1), (1:1:1).
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Callable

from errors import InvariantViolation, PreconditionError
from exact.polynomial import evaluate
from exact.rationals import format_rational
from lines.census import LineCensus
from lines.plucker import LineLabel, ProjPoint
from model.octanomial import PlaneCubicBasis
from blowdown.planes import PlaneForm, plane_span

logger = logging.getLogger(__name__)

PLANE_INDICES: tuple[tuple[int, int], ...] = ((1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2))

# Each chart is three products h_ab·h_cd, one per output coordinate
CHARTS: dict[str, tuple[tuple[tuple[int, int], tuple[int, int]], ...]] = {
    "U12": (((1, 2), (2, 3)), ((2, 1), (1, 3)), ((1, 2), (2, 1))),
    "U13": (((1, 3), (3, 2)), ((1, 3), (3, 1)), ((3, 1), (1, 2))),
    "U23": (((2, 3), (3, 2)), ((2, 3), (3, 1)), ((3, 2), (2, 1))),
}

ANCHOR_LINE = LineLabel("E", (4,))


def image_point(basis: PlaneCubicBasis, q: Sequence[Any]) -> ProjPoint:
    """φ(q): the four basis cubics evaluated at a plane point.

    Raises:
        PreconditionError: q is a base point.
    """
    values = tuple(evaluate(cubic, q) for cubic in basis)
    if not any(v != 0 for v in values):
        raise PreconditionError(f"{tuple(q)} is a base point of the cubic map")
    return ProjPoint(values)


@dataclass(frozen=True)
class BlowdownMap:
    planes: dict[tuple[int, int], PlaneForm]
    constants: dict[str, tuple[Any, Any, Any]]
    anchor: ProjPoint

    def _products(self, chart: str, q: Sequence[Any]) -> tuple[Any, ...]:
        h: Callable[[tuple[int, int]], Any] = lambda ij: self.planes[ij](q)
        return tuple(h(a) * h(b) for a, b in CHARTS[chart])

    def chart(self, name: str, q: Sequence[Any]) -> tuple[Any, ...]:
        """The chart formula at q; the zero vector off the chart's domain."""
        return tuple(c * v for c, v in zip(self.constants[name], self._products(name, q)))

    def charts_at(self, q: Sequence[Any]) -> dict[str, ProjPoint]:
        values = {name: self.chart(name, q) for name in CHARTS}
        return {name: ProjPoint(v) for name, v in values.items() if any(x != 0 for x in v)}

    def __call__(self, q: Sequence[Any]) -> ProjPoint | None:
        """π(q), or None when q lies in no chart domain.

        Raises:
            InvariantViolation: two charts disagree at q.
        """
        images = list(self.charts_at(q).values())
        if not images:
            return None
        if any(not images[0].same_as(other) for other in images[1:]):
            raise InvariantViolation(f"Charts disagree at {tuple(q)}: {[str(x) for x in images]}")
        return images[0]

    def to_json(self) -> dict[str, Any]:
        return {
            "planes": {f"h{i}{j}": form.to_json() for (i, j), form in sorted(self.planes.items())},
            "constants": {
                name: [format_rational(v) for v in values]
                for name, values in self.constants.items()
            },
            "anchor": str(self.anchor),
        }


def _line_points(census: LineCensus, label: LineLabel) -> list[ProjPoint]:
    """Intersection points with the neighbours, then sample points of the line."""
    points = [census.intersection(label, other) for other in census.neighbours(label)]
    return points + census[label].sample_points(7)


def blowdown_map(census: LineCensus) -> BlowdownMap:
    """Plane forms and chart constants fixed by π(E4) = (1:1:1).

    Raises:
        InvariantViolation: no point of E4 lies in every chart domain.
    """
    planes = {
        (i, j): plane_span(census[LineLabel("G", (i,))], census[LineLabel("E", (j,))])
        for i, j in PLANE_INDICES
    }
    anchor = next(
        (q for q in _line_points(census, ANCHOR_LINE) if all(h(q) != 0 for h in planes.values())),
        None,
    )
    if anchor is None:
        raise InvariantViolation("No point of E4 lies in every chart domain")
    constants = {}
    for name, factors in CHARTS.items():
        constants[name] = tuple(1 / (planes[a](anchor) * planes[b](anchor)) for a, b in factors)
    logger.debug("Blow-down anchored at %s", anchor)
    return BlowdownMap(planes, constants, anchor)


def contracted_image(bmap: BlowdownMap, census: LineCensus, label: LineLabel) -> ProjPoint:
    """π(E_i), evaluated at the first point of E_i inside a chart domain."""
    for q in _line_points(census, label):
        image = bmap(q)
        if image is not None:
            return image
    raise InvariantViolation(f"No point of {label} lies in a chart domain")

