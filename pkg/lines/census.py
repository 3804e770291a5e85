"""
Octodp — Line Census
All 27 lines with their incidences and 135 intersection points, and the
structural checks pinning the labels to the coordinate geometry of the
octanomial: four coordinate lines, four lines in coordinate planes, one line
missing every coordinate line and six triplets sharing a zero pattern.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any

from errors import InvariantViolation
from exact.rationals import primitive_integer_vector
from lines.construction import construct_lines
from lines.plucker import (
    PLUCKER_NAMES,
    LineLabel,
    PluckerLine,
    ProjPoint,
    all_labels,
    intersection_point,
    labels_meet,
    plucker_relation,
)
from model.moduli import ModuliVector
from model.octanomial import OctanomialCoefficients, coefficients_from_moduli, octanomial_cubic

logger = logging.getLogger(__name__)

# Coordinate lines and the index of their single nonzero Plücker coordinate
COORDINATE_LINES: dict[str, str] = {"F12": "p13", "F13": "p02", "F46": "p03", "F56": "p12"}

# Lines inside a coordinate plane {x_k = 0}, k indexing (x, y, z, w)
PLANE_LINES: dict[str, int] = {"F34": 0, "F25": 1, "F35": 2, "F24": 3}

# Second equation of each plane line as coefficient labels on (x, y, z, w)
PLANE_LINE_EQUATIONS: dict[str, tuple[str | None, ...]] = {
    "F34": (None, "d", "g", "h"),
    "F25": ("c", None, "g", "h"),
    "F35": ("e", "f", None, "b"),
    "F24": ("e", "f", "a", None),
}

# Triples of lines and the coordinate lines each member meets
TRIPLES_MEETING: dict[tuple[str, str, str], frozenset[str]] = {
    ("E1", "F45", "G1"): frozenset({"F12", "F13"}),
    ("E6", "F23", "G6"): frozenset({"F46", "F56"}),
    ("E2", "F36", "G2"): frozenset({"F12"}),
    ("E3", "F26", "G3"): frozenset({"F13"}),
    ("E4", "F15", "G4"): frozenset({"F46"}),
    ("E5", "F14", "G5"): frozenset({"F56"}),
}

MIDDLE_LINE = "F16"


def _label(value: str | LineLabel) -> LineLabel:
    return value if isinstance(value, LineLabel) else LineLabel.parse(value)


@dataclass(frozen=True)
class LineCensus:
    moduli: ModuliVector
    lines: dict[LineLabel, PluckerLine]
    incidence: frozenset[frozenset[LineLabel]]
    intersections: dict[frozenset[LineLabel], ProjPoint]

    def __getitem__(self, label: str | LineLabel) -> PluckerLine:
        return self.lines[_label(label)]

    def __iter__(self):
        return iter(self.lines.values())

    def __len__(self) -> int:
        return len(self.lines)

    def meets(self, a: str | LineLabel, b: str | LineLabel) -> bool:
        return frozenset((_label(a), _label(b))) in self.incidence

    def neighbours(self, label: str | LineLabel) -> list[LineLabel]:
        label = _label(label)
        return sorted(other for other in self.lines if self.meets(label, other))

    def intersection(self, a: str | LineLabel, b: str | LineLabel) -> ProjPoint:
        return self.intersections[frozenset((_label(a), _label(b)))]

    def coordinate_lines_met(self, label: str | LineLabel) -> frozenset[str]:
        label = _label(label)
        return frozenset(
            name for name in COORDINATE_LINES
            if name != str(label) and self.meets(label, name)
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "moduli": self.moduli.to_json(),
            "lines": [line.to_json() for line in self.lines.values()],
            "incidences": [
                {
                    "lines": [str(x) for x in sorted(pair)],
                    "point": [int(v) for v in point.integral()],
                }
                for pair, point in sorted(
                    self.intersections.items(), key=lambda kv: sorted(kv[0])
                )
            ],
        }


def _incidence(lines: dict[LineLabel, PluckerLine]) -> frozenset[frozenset[LineLabel]]:
    return frozenset(
        frozenset((a.label, b.label))
        for a, b in itertools.combinations(lines.values(), 2)
        if a.meets(b)
    )


def build_census(d: ModuliVector) -> LineCensus:
    """Construct lines, incidences and intersection points without checks."""
    lines = construct_lines(d)
    incidence = _incidence(lines)
    intersections = {}
    for pair in incidence:
        a, b = sorted(pair)
        intersections[pair] = intersection_point(lines[a], lines[b])
    return LineCensus(d, lines, incidence, intersections)


# ---------------------------------------------------------------------------
# Structure checks
# ---------------------------------------------------------------------------

def schlafli_violations(census: LineCensus) -> list[str]:
    """Deviations from the strongly regular (27, 10, 1, 5) incidence graph."""
    problems = []
    labels = list(census.lines)
    neighbours = {x: set(census.neighbours(x)) for x in labels}
    for x in labels:
        if len(neighbours[x]) != 10:
            problems.append(f"{x} meets {len(neighbours[x])} lines")
    for x, y in itertools.combinations(labels, 2):
        common = len(neighbours[x] & neighbours[y])
        expected = 1 if census.meets(x, y) else 5
        if common != expected:
            problems.append(f"{x},{y} share {common} neighbours, expected {expected}")
    if len(census.incidence) != 135:
        problems.append(f"{len(census.incidence)} incident pairs, expected 135")
    return problems


def structure_violations(
    census: LineCensus, coefficients: OctanomialCoefficients | None = None
) -> list[str]:
    """Every deviation of the census from the expected coordinate geometry."""
    coefficients = coefficients or coefficients_from_moduli(census.moduli)
    cubic = octanomial_cubic(coefficients)
    problems = []

    for line in census:
        if plucker_relation(line.p) != 0:
            problems.append(f"{line.label}: Plücker relation fails")
        if any(cubic(pt.coords) != 0 for pt in line.sample_points(4)):
            problems.append(f"{line.label}: not contained in the surface")

    for a, b in itertools.combinations(census.lines, 2):
        if census.meets(a, b) != labels_meet(a, b):
            problems.append(f"{a},{b}: incidence disagrees with labels")

    for name, coord in COORDINATE_LINES.items():
        nonzero = [n for n, v in zip(PLUCKER_NAMES, census[name].p) if v != 0]
        if nonzero != [coord]:
            problems.append(f"{name}: expected only {coord} nonzero, got {nonzero}")

    values = coefficients.as_dict()
    for name, k in PLANE_LINES.items():
        line = census[name]
        equation = [values[c] if c else 0 for c in PLANE_LINE_EQUATIONS[name]]
        for pt in line.span:
            if pt[k] != 0 or sum(e * x for e, x in zip(equation, pt)) != 0:
                problems.append(f"{name}: not on its printed plane pair")
                break

    if census.coordinate_lines_met(MIDDLE_LINE):
        problems.append(f"{MIDDLE_LINE} meets a coordinate line")
    others = [
        x for x in census.lines
        if str(x) not in COORDINATE_LINES and str(x) not in PLANE_LINES and str(x) != MIDDLE_LINE
    ]
    if any(not census.coordinate_lines_met(x) for x in others):
        problems.append(f"{MIDDLE_LINE} is not the unique line missing all coordinate lines")

    for triple, expected in TRIPLES_MEETING.items():
        for name in triple:
            met = census.coordinate_lines_met(name)
            if met != expected:
                problems.append(f"{name}: meets {sorted(met)}, expected {sorted(expected)}")
    return problems


def full_census(d: ModuliVector, check: bool = True) -> LineCensus:
    """Build the census and, by default, abort on any structural deviation.

    Raises:
        InvariantViolation: with the list of deviations.
    """
    census = build_census(d)
    if check:
        problems = schlafli_violations(census) + structure_violations(census)
        if problems:
            logger.error("Census for d=%s failed %d checks", d, len(problems))
            raise InvariantViolation("Line census check failed: " + "; ".join(problems[:10]))
    logger.debug("Census for d=%s: %d lines, %d incidences", d, len(census), len(census.incidence))
    return census


def triplets(census: LineCensus) -> dict[tuple[bool, ...], tuple[LineLabel, ...]]:
    """The six triplets of lines sharing a Plücker zero pattern."""
    groups: dict[tuple[bool, ...], list[LineLabel]] = {}
    for triple in TRIPLES_MEETING:
        for name in triple:
            line = census[name]
            groups.setdefault(line.zero_pattern, []).append(line.label)
    if len(groups) != 6 or any(len(g) != 3 for g in groups.values()):
        raise InvariantViolation(f"Expected six triplets, got sizes {[len(g) for g in groups.values()]}")
    return {k: tuple(sorted(v)) for k, v in groups.items()}


# ---------------------------------------------------------------------------
# Products of roots
# ---------------------------------------------------------------------------

def pair_triplet_formulas(d: ModuliVector) -> dict[str, tuple[Any, ...]]:
    """Plücker vectors of one line in each triplet meeting two coordinate lines."""
    d1, d2, d3, d4, d5, d6 = d
    zero = d1 - d1
    s345, s245, s134, s125 = d3 + d4 + d5, d2 + d4 + d5, d1 + d3 + d4, d1 + d2 + d5
    s124, s135 = d1 + d2 + d4, d1 + d3 + d5
    return {
        "p02=p13=0": (
            (d5 - d6) * (d4 - d6) * (d3 - d5) * (d2 - d4),
            zero,
            (d4 - d6) ** 2 * (d3 - d5) * (d2 - d5),
            -((d5 - d6) ** 2) * (d3 - d4) * (d2 - d4),
            zero,
            (d5 - d6) * (d4 - d6) * (d3 - d4) * (d2 - d5),
        ),
        "p03=p12=0": (
            s345 * s245 * s134 * s125,
            s345**2 * s125 * s124,
            zero,
            zero,
            -(s245**2) * s135 * s134,
            -s345 * s245 * s135 * s124,
        ),
    }


def _matching_lines(census: LineCensus, vector: Iterable[Any]) -> list[LineLabel]:
    target = primitive_integer_vector(list(vector))
    return [line.label for line in census if line.p == target]


def triplet_formula_check(d: ModuliVector, census: LineCensus | None = None) -> bool:
    """Each printed product-of-roots vector is the Plücker vector of a member
    of the triplet with the matching zero pattern."""
    census = census or full_census(d)
    triples = {
        "p02=p13=0": ("E1", "F45", "G1"),
        "p03=p12=0": ("E6", "F23", "G6"),
    }
    ok = True
    for key, vector in pair_triplet_formulas(d).items():
        hits = _matching_lines(census, vector)
        members = {LineLabel.parse(x) for x in triples[key]}
        if len(hits) != 1 or hits[0] not in members:
            logger.warning("Formula %s matched %s for d=%s", key, [str(h) for h in hits], d)
            ok = False
    return ok


__all__ = [
    "COORDINATE_LINES",
    "LineCensus",
    "all_labels",
    "build_census",
    "full_census",
    "schlafli_violations",
    "structure_violations",
    "triplet_formula_check",
    "triplets",
]
