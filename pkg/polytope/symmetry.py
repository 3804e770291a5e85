"""
Octodp — Support Symmetries & Census
Affine-unimodular symmetries of the support as point permutations, orbit
decomposition of triangulations, and lookup in the printed class table.
"""

from __future__ import annotations

import functools
import itertools
import json
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

from config import settings
from errors import InvariantViolation
from exact.matrix import RatMatrix, det_integer, inverse, matmul
from polytope.secondary import RegularityCertificate, enumerate_regular_triangulations
from polytope.triangulations import (
    SupportConfig,
    Triangulation,
    gkz_vector,
    regular_subdivision,
    sr_ideal,
    support_config,
)

logger = logging.getLogger(__name__)

TABLE_FILE = "triangulation_table.json"


@functools.lru_cache(maxsize=4)
def symmetry_group(config: SupportConfig | None = None) -> tuple[tuple[tuple[str, str], ...], ...]:
    """Point permutations induced by lattice-preserving affine maps fixing the set.

    Each map is pinned by the images of four affinely independent points;
    it is kept when its linear part has determinant ±1 and it permutes the
    configuration.
    """
    config = config or support_config()
    labels = config.labels
    index = {tuple(p): k for k, p in config.points.items()}
    base = _affine_basis(config)
    o, b1, b2, b3 = (config.points[k] for k in base)
    diffs = [tuple(x - y for x, y in zip(bi, o)) for bi in (b1, b2, b3)]
    det_base = det_integer([list(d) for d in diffs])
    if abs(det_base) != 1:
        raise InvariantViolation("Affine basis must be unimodular")
    found = []
    for images in itertools.permutations(labels, 4):
        io, *ib = (config.points[k] for k in images)
        img_diffs = [tuple(x - y for x, y in zip(bi, io)) for bi in ib]
        # M maps diffs[i] -> img_diffs[i]; since diffs is unimodular, M is integral
        M = _linear_map(diffs, img_diffs)
        if M is None or abs(det_integer(M)) != 1:
            continue
        perm = {}
        for k, p in config.points.items():
            rel = [x - y for x, y in zip(p, o)]
            image = tuple(sum(M[r][c] * rel[c] for c in range(3)) + io[r] for r in range(3))
            if image not in index:
                break
            perm[k] = index[image]
        else:
            found.append(tuple(sorted(perm.items())))
    return tuple(sorted(set(found)))


def _affine_basis(config: SupportConfig) -> tuple[str, str, str, str]:
    for quad in itertools.combinations(config.labels, 4):
        o = config.points[quad[0]]
        diffs = [[x - y for x, y in zip(config.points[k], o)] for k in quad[1:]]
        if abs(det_integer(diffs)) == 1:
            return quad  # type: ignore[return-value]
    raise InvariantViolation("Configuration has no unimodular affine basis")


def _linear_map(src: Sequence[Sequence[int]], dst: Sequence[Sequence[int]]) -> list[list[int]] | None:
    """Integral 3x3 M with M·src[i] = dst[i], or None if not integral."""
    S = RatMatrix.from_rows([[src[c][r] for c in range(3)] for r in range(3)])
    D = RatMatrix.from_rows([[dst[c][r] for c in range(3)] for r in range(3)])
    M = matmul(D, inverse(S))
    if any(M[r, c].denominator != 1 for r in range(3) for c in range(3)):
        return None
    return [[int(M[r, c].numerator) for c in range(3)] for r in range(3)]


def act(perm: Iterable[tuple[str, str]], t: Triangulation) -> Triangulation:
    mapping = dict(perm)
    return Triangulation.of("".join(mapping[k] for k in cell) for cell in t.cells)


def canonical_form(t: Triangulation, config: SupportConfig | None = None) -> tuple[str, ...]:
    """Lexicographically least image of the cell list under the group."""
    return min(tuple(act(g, t).sorted_cells()) for g in symmetry_group(config))


def symmetry_orbits(
    ts: Iterable[Triangulation], config: SupportConfig | None = None
) -> list[list[Triangulation]]:
    """Orbit partition, orbits ordered by (size, canonical form)."""
    orbits: dict[tuple[str, ...], list[Triangulation]] = {}
    for t in ts:
        orbits.setdefault(canonical_form(t, config), []).append(t)
    return [orbits[k] for k in sorted(orbits, key=lambda k: (len(orbits[k]), k))]


# ---------------------------------------------------------------------------
# Printed class table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    row: int
    orbit_size: int
    sr_ideal: tuple[str, ...]
    weights: tuple[int, ...]
    gkz: tuple[int, ...]

    @property
    def triangulation(self) -> Triangulation:
        return regular_subdivision(self.weights)


@functools.lru_cache(maxsize=1)
def load_table() -> dict[str, Any]:
    path = settings.data_dir / TABLE_FILE
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    data["rows"] = [
        TableRow(
            row=r["row"],
            orbit_size=r["orbit_size"],
            sr_ideal=tuple(sorted(r["sr_ideal"], key=lambda s: (len(s), s))),
            weights=tuple(r["weights"]),
            gkz=tuple(r["gkz"]),
        )
        for r in data["rows"]
    ]
    return data


def table_rows() -> list[TableRow]:
    return load_table()["rows"]


@functools.lru_cache(maxsize=1)
def _row_forms() -> dict[tuple[str, ...], int]:
    return {canonical_form(r.triangulation): r.row for r in table_rows()}


def class_index(t: Triangulation) -> int | None:
    """Table row of the symmetry class of a unimodular triangulation, if listed."""
    return _row_forms().get(canonical_form(t))


# ---------------------------------------------------------------------------
# Full census
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitSummary:
    size: int
    unimodular: bool
    representative: Triangulation
    witness: tuple[int, ...]
    sr_ideal: tuple[str, ...]
    gkz: tuple[int, ...]
    table_row: int | None

    def to_json(self) -> dict[str, Any]:
        return {
            "size": self.size,
            "unimodular": self.unimodular,
            "table_row": self.table_row,
            "cells": self.representative.sorted_cells(),
            "sr_ideal": list(self.sr_ideal),
            "weights": list(self.witness),
            "gkz": list(self.gkz),
        }


def triangulation_census(config: SupportConfig | None = None) -> list[OrbitSummary]:
    """Orbits of regular triangulations with SR ideal, witness and GKZ vector."""
    config = config or support_config()
    certs: dict[Triangulation, RegularityCertificate] = {
        c.triangulation: c for c in enumerate_regular_triangulations(config)
    }
    summaries = []
    for orbit in symmetry_orbits(certs, config):
        rep = min(orbit, key=lambda t: t.sorted_cells())
        unimodular = rep.is_unimodular(config)
        summaries.append(
            OrbitSummary(
                size=len(orbit),
                unimodular=unimodular,
                representative=rep,
                witness=certs[rep].witness,
                sr_ideal=sr_ideal(rep, config.labels),
                gkz=gkz_vector(rep, config),
                table_row=class_index(rep) if unimodular else None,
            )
        )
    logger.info(
        "Triangulation census: %d regular in %d orbits",
        sum(s.size for s in summaries),
        len(summaries),
    )
    return summaries
