"""
Octodp — Tree Arrangements
Each line carries ten intersection points.  The valuations of the 45 2×2
minors of their coordinates on the line form a tree metric; the splits of the
ten-leaf tree are recovered exactly by testing every bipartition against all
its quartets.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Any

from sympy import QQ

from errors import InvariantViolation, PreconditionError
from exact.rationals import primitive_integer_vector
from exact.valuation import ExtValuation, valuation
from lines.census import LineCensus
from lines.plucker import PLUCKER_INDICES, LineLabel, PluckerLine

logger = logging.getLogger(__name__)

LEAF_COUNT = 10

Pair = tuple[int, int]


# ---------------------------------------------------------------------------
# Metric
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TreeMetric:
    """Minor valuations v(i, j) between the leaves of one line."""

    line: LineLabel
    leaves: tuple[LineLabel, ...]
    axis: Pair
    values: dict[Pair, ExtValuation] = field(compare=False)

    def v(self, i: int, j: int) -> ExtValuation:
        return self.values[(i, j) if i < j else (j, i)]

    def quartet_sums(self, i: int, j: int, k: int, l: int) -> tuple[Any, Any, Any]:
        """The three pairings ij|kl, ik|jl, il|jk as valuation sums."""
        v = self.v
        return (
            (v(i, j) + v(k, l)).finite,
            (v(i, k) + v(j, l)).finite,
            (v(i, l) + v(j, k)).finite,
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "line": str(self.line),
            "leaves": [str(x) for x in self.leaves],
            "axis": list(self.axis),
            "minors": {f"{i},{j}": v.to_json() for (i, j), v in sorted(self.values.items())},
        }


def projection_axes(line: PluckerLine) -> list[Pair]:
    """Coordinate pairs that project the line isomorphically onto P^1."""
    return [axis for axis, v in zip(PLUCKER_INDICES, line.p) if v != 0]


def tree_metric(
    line: PluckerLine, census: LineCensus, p: int, axis: Pair | None = None
) -> TreeMetric:
    """Valuations of the 45 minors of the 2×10 matrix of intersection points.

    Raises:
        PreconditionError: the axis is degenerate for the line, or two
            intersection points coincide (a minor vanishes).
    """
    axes = projection_axes(line)
    axis = axis or axes[0]
    if axis not in axes:
        raise PreconditionError(f"Axis {axis} collapses {line.label}")
    leaves = tuple(census.neighbours(line.label))
    if len(leaves) != LEAF_COUNT:
        raise InvariantViolation(f"{line.label} meets {len(leaves)} lines")
    a, b = axis
    columns = []
    for other in leaves:
        point = census.intersection(line.label, other)
        columns.append(primitive_integer_vector((point[a], point[b])))
    values = {}
    for i, j in itertools.combinations(range(LEAF_COUNT), 2):
        (xi, yi), (xj, yj) = columns[i], columns[j]
        val = valuation(xi * yj - xj * yi, p)
        if val.is_infinite:
            raise PreconditionError(
                f"{line.label}: points with {leaves[i]} and {leaves[j]} coincide"
            )
        values[(i, j)] = val
    return TreeMetric(line.label, leaves, axis, values)


def four_point_violations(metric: TreeMetric) -> list[tuple[int, int, int, int]]:
    """Quartets whose minimal valuation sum is attained only once."""
    bad = []
    for quartet in itertools.combinations(range(len(metric.leaves)), 4):
        sums = sorted(metric.quartet_sums(*quartet))
        if sums[0] != sums[1]:
            bad.append(quartet)
    return bad


# ---------------------------------------------------------------------------
# Splits
# ---------------------------------------------------------------------------

def _resolves(metric: TreeMetric, i: int, j: int, k: int, l: int) -> bool:
    """True iff the quartet is resolved as ij|kl."""
    together, cross1, cross2 = metric.quartet_sums(i, j, k, l)
    return together > cross1 == cross2


def _is_split(metric: TreeMetric, side: frozenset[int]) -> bool:
    other = [x for x in range(len(metric.leaves)) if x not in side]
    inside = sorted(side)
    for i, j in itertools.combinations(inside, 2):
        for k, l in itertools.combinations(other, 2):
            if not _resolves(metric, i, j, k, l):
                return False
    return True


def _isolation_index(metric: TreeMetric, side: frozenset[int]) -> Any:
    """Half the smallest gap between the split pairing and the better cross pairing."""
    other = [x for x in range(len(metric.leaves)) if x not in side]
    gaps = []
    for i, j in itertools.combinations(sorted(side), 2):
        for k, l in itertools.combinations(other, 2):
            together, cross1, cross2 = metric.quartet_sums(i, j, k, l)
            gaps.append(together - min(cross1, cross2))
    return QQ(min(gaps)) / 2


def candidate_sides(leaf_count: int = LEAF_COUNT) -> list[frozenset[int]]:
    """Sides not containing leaf 0 with at least two leaves on each side."""
    rest = range(1, leaf_count)
    return [
        frozenset(c)
        for size in range(2, leaf_count - 1)
        for c in itertools.combinations(rest, size)
    ]


def compatible(a: frozenset[int], b: frozenset[int]) -> bool:
    """Sides avoiding a common leaf are compatible iff nested or disjoint."""
    return a <= b or b <= a or not (a & b)


@total_ordering
@dataclass(frozen=True)
class SplitString:
    """Number of splits whose smaller side has 2, 3, 4, 5 leaves."""

    s2: int = 0
    s3: int = 0
    s4: int = 0
    s5: int = 0

    @classmethod
    def parse(cls, text: str) -> SplitString:
        digits = text.strip("[]")
        if len(digits) != 4 or not digits.isdigit():
            raise PreconditionError(f"Bad split string {text!r}")
        return cls(*(int(x) for x in digits))

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.s2, self.s3, self.s4, self.s5)

    @property
    def key(self) -> str:
        return "".join(str(x) for x in self.as_tuple())

    def dominated_by(self, other: SplitString) -> bool:
        """Coordinatewise ≤, i.e. reachable from other by contracting edges."""
        return all(a <= b for a, b in zip(self.as_tuple(), other.as_tuple()))

    def __lt__(self, other: SplitString) -> bool:
        return self.as_tuple() < other.as_tuple()

    def __str__(self) -> str:
        return f"[{self.key}]"


@dataclass(frozen=True)
class PhyloTree:
    """A ten-leaf tree as a set of compatible splits.

    Splits are stored by their side not containing leaf 0.
    """

    leaves: tuple[LineLabel, ...]
    splits: frozenset[frozenset[int]]
    edge_weights: dict[frozenset[int], Any] = field(default_factory=dict, compare=False)

    def ordered_splits(self) -> list[frozenset[int]]:
        return sorted(self.splits, key=lambda s: (len(s), sorted(s)))

    def newick(self) -> str:
        """Newick string rooted at leaf 0, with Buneman edge lengths on splits."""

        def children(members: frozenset[int]) -> list[frozenset[int]]:
            inner = [c for c in self.splits if c < members]
            return [c for c in inner if not any(c < other for other in inner)]

        def render(members: frozenset[int]) -> str:
            subtrees = children(members)
            covered = frozenset().union(*subtrees)
            parts = [(min(c), cluster(c)) for c in subtrees]
            parts += [(i, str(self.leaves[i])) for i in members - covered]
            return ",".join(text for _, text in sorted(parts))

        def cluster(c: frozenset[int]) -> str:
            weight = self.edge_weights.get(c)
            length = f":{format_length(weight)}" if weight is not None else ""
            return f"({render(c)}){length}"

        rest = frozenset(range(1, len(self.leaves)))
        return f"({self.leaves[0]},{render(rest)});"

    def to_json(self) -> dict[str, Any]:
        splits = []
        for side in self.ordered_splits():
            weight = self.edge_weights.get(side)
            splits.append({
                "side": [str(self.leaves[i]) for i in sorted(side)],
                "weight": format_length(weight) if weight is not None else None,
            })
        return {
            "leaves": [str(x) for x in self.leaves],
            "splits": splits,
            "split_string": str(split_string(self)),
            "newick": self.newick(),
        }


def format_length(value: Any) -> str:
    """Exact decimal of a half-integer edge length."""
    num, den = int(value.numerator), int(value.denominator)
    if den == 1:
        return str(num)
    if den == 2:
        sign = "-" if num < 0 else ""
        return f"{sign}{abs(num) // 2}.5"
    return f"{num}/{den}"


def recover_tree(metric: TreeMetric) -> PhyloTree:
    """All bipartitions resolved unanimously by their quartets.

    Raises:
        InvariantViolation: the metric violates the four-point condition or
            the recovered splits are incompatible.
    """
    bad = four_point_violations(metric)
    if bad:
        raise InvariantViolation(
            f"{metric.line}: four-point condition fails on {len(bad)} quartets, e.g. {bad[0]}"
        )
    sides = [s for s in candidate_sides(len(metric.leaves)) if _is_split(metric, s)]
    for a, b in itertools.combinations(sides, 2):
        if not compatible(a, b):
            raise InvariantViolation(f"{metric.line}: incompatible splits {sorted(a)} and {sorted(b)}")
    if len(sides) > len(metric.leaves) - 3:
        raise InvariantViolation(f"{metric.line}: {len(sides)} splits on {len(metric.leaves)} leaves")
    weights = {s: _isolation_index(metric, s) for s in sides}
    logger.debug("%s: %d splits recovered", metric.line, len(sides))
    return PhyloTree(metric.leaves, frozenset(sides), weights)


def split_string(tree: PhyloTree) -> SplitString:
    n = len(tree.leaves)
    counts = Counter(min(len(s), n - len(s)) for s in tree.splits)
    return SplitString(counts[2], counts[3], counts[4], counts[5])


def line_tree(line: PluckerLine, census: LineCensus, p: int, axis: Pair | None = None) -> PhyloTree:
    return recover_tree(tree_metric(line, census, p, axis))
