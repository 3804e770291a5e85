"""
Octodp — Arrangement Classification
Tropical smoothness of the coefficient valuations, the 27-tree arrangement of
a surface, its multiset of split strings, and the arrangement type.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

from discriminants.smoothness import SmoothnessCertificate, smoothness_certificate
from errors import PreconditionError
from exact.valuation import ExtValuation, check_prime, valuations
from lines.census import LineCensus, full_census
from lines.plucker import LineLabel
from model.moduli import ModuliVector
from model.octanomial import OctanomialCoefficients, coefficients_from_moduli
from polytope.secondary import cone_inequalities
from polytope.symmetry import class_index
from polytope.triangulations import Triangulation, regular_subdivision
from tropical.signatures import (
    DistinctnessReport,
    TripletCoordinate,
    distinct_tropical_lines,
    triplet_root_valuations,
)
from tropical.trees import PhyloTree, SplitString, line_tree, split_string

logger = logging.getLogger(__name__)

LINE_COUNT = 27

# Arrangement type tags
AAAA = "(aaaa)"
AAAB = "(aaab)"
AAB = "(aab)"
AAA = "(aaa)"
OTHER_STABLE = "other-stable"
NON_STABLE = "non-stable-unknown"

NARUKI_GENERAL = (AAAA, AAAB)

KNOWN_STATISTICS: dict[str, dict[str, int]] = {
    AAAA: {"4021": 24, "4020": 3},
    AAAB: {"2221": 12, "4201": 12, "4210": 3},
    AAB: {"2210": 1, "2220": 4, "2221": 8, "4201": 12, "4210": 2},
    AAA: {"2020": 1, "4020": 6, "4021": 20},
}

# Every stable string contracts from one of these
GENERIC_STRINGS: tuple[SplitString, ...] = tuple(
    SplitString.parse(s) for s in ("4021", "4020", "2221", "4201", "4210")
)


# ---------------------------------------------------------------------------
# Tropical smoothness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TropicalSmoothness:
    valuations: tuple[ExtValuation, ...]
    triangulation: Triangulation | None
    class_index: int | None
    boundary: bool

    @property
    def smooth(self) -> bool:
        return self.class_index is not None

    def to_json(self) -> dict[str, Any]:
        return {
            "valuations": [v.to_json() for v in self.valuations],
            "boundary": self.boundary,
            "cells": self.triangulation.sorted_cells() if self.triangulation else None,
            "unimodular": bool(self.triangulation and self.triangulation.is_unimodular()),
            "class": self.class_index,
        }


def tropical_smoothness(c: OctanomialCoefficients, p: int) -> TropicalSmoothness:
    """Class (table row) of the subdivision induced by val_p of the coefficients.

    A vanishing coefficient puts the surface on the boundary; a subdivision
    that is not a unimodular triangulation has no class.
    """
    check_prime(p)
    vals = valuations(c.as_tuple(), p)
    if any(v.is_infinite for v in vals):
        return TropicalSmoothness(vals, None, None, boundary=True)
    t = regular_subdivision([int(v) for v in vals])
    index = class_index(t) if t.is_unimodular() else None
    logger.debug("Valuations %s give %d cells, class %s", vals, len(t.cells), index)
    return TropicalSmoothness(vals, t, index, boundary=False)


def in_secondary_cone(smoothness: TropicalSmoothness) -> bool:
    """The valuations lie strictly inside the cone of their own triangulation."""
    if smoothness.triangulation is None or not smoothness.triangulation.is_triangulation():
        return False
    return cone_inequalities(smoothness.triangulation, smoothness.valuations)


# ---------------------------------------------------------------------------
# Arrangement statistic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArrangementStatistic:
    """The 27 split strings, one per line, counted with multiplicity."""

    strings: tuple[SplitString, ...]
    labels: tuple[LineLabel, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.strings) != LINE_COUNT:
            raise PreconditionError(f"An arrangement has {LINE_COUNT} trees, got {len(self.strings)}")

    @classmethod
    def from_counts(cls, counts: Mapping[str, int]) -> ArrangementStatistic:
        strings = []
        for key, n in sorted(counts.items()):
            strings.extend([SplitString.parse(key)] * n)
        return cls(tuple(strings))

    @property
    def counts(self) -> dict[str, int]:
        return dict(sorted(Counter(s.key for s in self.strings).items()))

    def __str__(self) -> str:
        parts = sorted(Counter(self.strings).items(), key=lambda kv: (-kv[1], kv[0]))
        return "{" + ",".join(f"{s}^{n}" for s, n in parts) + "}"

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"counts": self.counts, "multiset": str(self)}
        if self.labels:
            data["per_line"] = {str(x): str(s) for x, s in zip(self.labels, self.strings)}
        return data


def arrangement_trees(census: LineCensus, p: int) -> dict[LineLabel, PhyloTree]:
    return {line.label: line_tree(line, census, p) for line in census}


def statistic_of_trees(trees: Mapping[LineLabel, PhyloTree]) -> ArrangementStatistic:
    labels = tuple(trees)
    return ArrangementStatistic(tuple(split_string(trees[x]) for x in labels), labels)


def arrangement_statistic(
    d: ModuliVector, p: int, census: LineCensus | None = None
) -> ArrangementStatistic:
    """Census, 27 tree metrics, 27 trees, 27 split strings."""
    check_prime(p)
    census = census or full_census(d)
    return statistic_of_trees(arrangement_trees(census, p))


def classify_arrangement(s: ArrangementStatistic) -> str:
    """Arrangement type of a statistic.

    Known statistics match exactly; a string not obtainable by contracting a
    generic string marks the arrangement non-stable.  Anything else is
    reported as other-stable.
    """
    counts = s.counts
    for tag, known in KNOWN_STATISTICS.items():
        if counts == dict(sorted(known.items())):
            return tag
    for string in set(s.strings):
        if not any(string.dominated_by(g) for g in GENERIC_STRINGS):
            return NON_STABLE
    return OTHER_STABLE


# ---------------------------------------------------------------------------
# Full report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationReport:
    moduli: ModuliVector
    prime: int
    coefficients: OctanomialCoefficients
    smoothness: TropicalSmoothness
    certificate: SmoothnessCertificate
    distinct_lines: DistinctnessReport
    triplets: tuple[TripletCoordinate, ...]
    trees: dict[LineLabel, PhyloTree]
    statistic: ArrangementStatistic
    arrangement_type: str

    @property
    def naruki_general(self) -> bool:
        return self.arrangement_type in NARUKI_GENERAL

    @property
    def triplets_consistent(self) -> bool:
        return all(t.consistent for t in self.triplets)

    def to_json(self, include_trees: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "moduli": self.moduli.to_json(),
            "prime": self.prime,
            "coefficients": self.coefficients.to_json(),
            "tropical_smoothness": self.smoothness.to_json(),
            "in_secondary_cone": in_secondary_cone(self.smoothness),
            "smoothness_certificate": self.certificate.to_json(),
            "distinct_tropical_lines": self.distinct_lines.to_json(),
            "triplets_consistent": self.triplets_consistent,
            "split_strings": {str(x): str(split_string(t)) for x, t in self.trees.items()},
            "statistic": self.statistic.to_json(),
            "type": self.arrangement_type,
        }
        if include_trees:
            data["trees"] = {str(x): t.to_json() for x, t in self.trees.items()}
        return data


def classify_moduli(
    d: ModuliVector, p: int, census: LineCensus | None = None
) -> ClassificationReport:
    """Run the whole tropical pipeline on one moduli vector."""
    check_prime(p)
    coefficients = coefficients_from_moduli(d)
    census = census or full_census(d)
    trees = arrangement_trees(census, p)
    statistic = statistic_of_trees(trees)
    report = ClassificationReport(
        moduli=d,
        prime=p,
        coefficients=coefficients,
        smoothness=tropical_smoothness(coefficients, p),
        certificate=smoothness_certificate(coefficients, p),
        distinct_lines=distinct_tropical_lines(census, p),
        triplets=tuple(triplet_root_valuations(census, p)),
        trees=trees,
        statistic=statistic,
        arrangement_type=classify_arrangement(statistic),
    )
    logger.info(
        "Classified d=%s at p=%d: class %s, %s %s",
        d, p, report.smoothness.class_index, report.arrangement_type, statistic,
    )
    return report
