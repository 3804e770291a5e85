"""
Octodp — Regular Subdivisions & Triangulations
Lower-hull subdivisions of the support configuration, exhaustive enumeration
of its triangulations, GKZ vectors and Stanley–Reisner ideals.
"""

from __future__ import annotations

import functools
import itertools
import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from sympy import QQ

from errors import PreconditionError
from exact.matrix import RatMatrix, det_integer, nullspace, solve_linear
from exact.rationals import qq
from polytope.constants import POINTS, TOTAL_VOLUME

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Point configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SupportConfig:
    """Labelled lattice points in Z^3 (the dehomogenised support by default)."""

    points: Mapping[str, tuple[int, ...]] = field(default_factory=lambda: dict(POINTS))

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.points.items())))

    @property
    def labels(self) -> str:
        return "".join(sorted(self.points))

    @property
    def dimension(self) -> int:
        rows = [[1, *p] for p in self.points.values()]
        return RatMatrix.from_rows(rows).rank() - 1

    def simplex_volume(self, cell: str) -> int:
        """Normalised volume |det| of a 4-point cell (0 if degenerate)."""
        rows = [[1, *self.points[k]] for k in cell]
        return abs(det_integer(rows))

    @functools.cached_property
    def simplices(self) -> tuple[str, ...]:
        """All full-dimensional 4-point cells, in label order."""
        return tuple(
            "".join(c)
            for c in itertools.combinations(self.labels, 4)
            if self.simplex_volume("".join(c)) != 0
        )

    @functools.cached_property
    def volume(self) -> int:
        """Normalised volume of the convex hull, summed over a placing triangulation."""
        placing = regular_subdivision({k: 10**i for i, k in enumerate(self.labels)}, self)
        return sum(self.simplex_volume(c) for c in placing.cells)

    def facets(self) -> frozenset[str]:
        """Point sets of the facets of the convex hull."""
        found = set()
        labels = self.labels
        for triple in itertools.combinations(labels, 3):
            base = [self.points[k] for k in triple]
            sides = []
            on_plane = []
            for k in labels:
                rows = [[1, *p] for p in base] + [[1, *self.points[k]]]
                s = det_integer(rows)
                if s == 0:
                    on_plane.append(k)
                else:
                    sides.append(s > 0)
            if len(set(sides)) == 1 and _affine_rank(self, on_plane) == 3:
                found.add("".join(on_plane))
        return frozenset(found)

    @functools.cached_property
    def barycentric(self) -> dict[tuple[str, str], tuple[Any, ...]]:
        """Affine coordinates of every point with respect to every simplex."""
        table = {}
        for cell in self.simplices:
            rows = [[1] * 4] + [[self.points[k][r] for k in cell] for r in range(3)]
            for j in self.labels:
                table[(cell, j)] = solve_linear(rows, [1, *self.points[j]])
        return table


def _affine_rank(config: SupportConfig, labels: Iterable[str]) -> int:
    rows = [[1, *config.points[k]] for k in labels]
    return RatMatrix.from_rows(rows).rank() if rows else 0


@functools.lru_cache(maxsize=1)
def support_config() -> SupportConfig:
    return SupportConfig()


def _weights(w: Sequence[Any] | Mapping[str, Any], config: SupportConfig) -> dict[str, Any]:
    if isinstance(w, Mapping):
        return {k: qq(w[k]) for k in config.labels}
    if len(w) != len(config.labels):
        raise PreconditionError(f"Weight vector needs {len(config.labels)} entries, got {len(w)}")
    return {k: qq(v) for k, v in zip(config.labels, w)}


# ---------------------------------------------------------------------------
# Triangulations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Triangulation:
    """A subdivision given by its cells (sorted label strings); a
    triangulation when every cell is a full-dimensional simplex.
    """

    cells: frozenset[str]

    @classmethod
    def of(cls, cells: Iterable[str]) -> Triangulation:
        return cls(frozenset("".join(sorted(c)) for c in cells))

    @property
    def vertices(self) -> str:
        return "".join(sorted(set("".join(self.cells))))

    def is_unimodular(self, config: SupportConfig | None = None) -> bool:
        config = config or support_config()
        return self.is_triangulation(config) and all(
            config.simplex_volume(c) == 1 for c in self.cells
        )

    def is_triangulation(self, config: SupportConfig | None = None) -> bool:
        config = config or support_config()
        if any(len(c) != 4 or config.simplex_volume(c) == 0 for c in self.cells):
            return False
        total = sum(config.simplex_volume(c) for c in self.cells)
        return total == config.volume and _pairwise_proper(self.cells, config)

    def sorted_cells(self) -> list[str]:
        return sorted(self.cells)

    def __str__(self) -> str:
        return " ".join(self.sorted_cells())


def regular_subdivision(
    w: Sequence[Any] | Mapping[str, Any], config: SupportConfig | None = None
) -> Triangulation:
    """Cells of the lower hull of the points lifted to heights w.

    A simplex spans a lower cell when no point lies strictly below its
    affine interpolation; the cell is the set of points on it.
    """
    config = config or support_config()
    heights = _weights(w, config)
    cells = set()
    for simplex in config.simplices:
        on_hull = []
        below = False
        for j in config.labels:
            lam = config.barycentric[(simplex, j)]
            lifted = sum((l * heights[k] for l, k in zip(lam, simplex)), QQ.zero)
            gap = heights[j] - lifted
            if gap < 0:
                below = True
                break
            if gap == 0:
                on_hull.append(j)
        if not below:
            cells.add("".join(on_hull))
    return Triangulation(frozenset(cells))


@functools.lru_cache(maxsize=4)
def circuits(config: SupportConfig | None = None) -> tuple[tuple[frozenset[str], frozenset[str]], ...]:
    """Oriented circuits (Z+, Z-) as minimal affine dependencies."""
    config = config or support_config()
    found = []
    for size in range(2, 6):
        for subset in itertools.combinations(config.labels, size):
            rows = [[1] * size] + [[config.points[k][r] for k in subset] for r in range(3)]
            basis = nullspace(RatMatrix.from_rows(rows))
            if len(basis) != 1 or any(v == 0 for v in basis[0]):
                continue
            plus = frozenset(k for k, v in zip(subset, basis[0]) if v > 0)
            minus = frozenset(k for k, v in zip(subset, basis[0]) if v < 0)
            found.append((plus, minus))
    logger.debug("Found %d circuits", len(found))
    return tuple(found)


def _proper(s: str, t: str, config: SupportConfig) -> bool:
    """Two simplices meet in a common face iff no circuit splits across them."""
    ss, ts = set(s), set(t)
    for plus, minus in circuits(config):
        if (plus <= ss and minus <= ts) or (minus <= ss and plus <= ts):
            return False
    return True


def _pairwise_proper(cells: Iterable[str], config: SupportConfig) -> bool:
    cells = list(cells)
    return all(_proper(s, t, config) for s, t in itertools.combinations(cells, 2))


@functools.lru_cache(maxsize=4)
def enumerate_triangulations(config: SupportConfig | None = None) -> tuple[Triangulation, ...]:
    """All triangulations, regular or not, by extending sets of compatible cells."""
    config = config or support_config()
    simplices = config.simplices
    vols = {s: config.simplex_volume(s) for s in simplices}
    compatible = {
        s: {t for t in simplices if t != s and _proper(s, t, config)} for s in simplices
    }
    total = config.volume
    results: list[Triangulation] = []

    def extend(chosen: list[str], allowed: list[str], volume: int) -> None:
        if volume == total:
            results.append(Triangulation(frozenset(chosen)))
            return
        for idx, s in enumerate(allowed):
            if volume + vols[s] > total:
                continue
            rest = [t for t in allowed[idx + 1:] if t in compatible[s]]
            extend(chosen + [s], rest, volume + vols[s])

    extend([], list(simplices), 0)
    logger.info("Enumerated %d triangulations", len(results))
    return tuple(sorted(results, key=lambda t: t.sorted_cells()))


# ---------------------------------------------------------------------------
# Invariants of a triangulation
# ---------------------------------------------------------------------------

def gkz_vector(t: Triangulation, config: SupportConfig | None = None) -> tuple[int, ...]:
    """Per-point total normalised volume of the incident cells."""
    config = config or support_config()
    if not t.is_triangulation(config):
        raise PreconditionError(f"Not a triangulation: {t}")
    vols = {c: config.simplex_volume(c) for c in t.cells}
    return tuple(sum(v for c, v in vols.items() if k in c) for k in config.labels)


def sr_ideal(t: Triangulation, vertices: str | None = None) -> tuple[str, ...]:
    """Minimal non-faces of the simplicial complex generated by the cells."""
    vertices = vertices or t.vertices
    faces: set[frozenset[str]] = set()
    for cell in t.cells:
        for r in range(1, len(cell) + 1):
            faces.update(frozenset(s) for s in itertools.combinations(cell, r))
    minimal = []
    for r in range(1, len(vertices) + 1):
        for subset in itertools.combinations(vertices, r):
            fs = frozenset(subset)
            if fs in faces:
                continue
            if all(frozenset(sub) in faces for sub in itertools.combinations(subset, r - 1) if sub):
                minimal.append("".join(subset))
    return tuple(sorted(minimal, key=lambda s: (len(s), s)))


def unimodular_count(ts: Iterable[Triangulation]) -> int:
    """Triangulations with exactly TOTAL_VOLUME cells."""
    return sum(1 for t in ts if len(t.cells) == TOTAL_VOLUME)

