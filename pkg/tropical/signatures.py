"""
Octodp — Tropical Line Signatures
p-adic tropicalisation of the 27 Plücker vectors: zero pattern plus
min-normalised valuations, the pairwise distinctness test, and the Newton
polygon check of each triplet against the tritangent-plane cubics of the
coordinate lines it meets.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any

from sympy import QQ

from errors import InvariantViolation
from exact.newton import newton_root_valuations
from exact.polynomial import exact_quotient, poly_ring, substitute, variable_names
from exact.rationals import format_rational, qq
from exact.valuation import INFINITY, ExtValuation, min_valuation, valuation, valuations
from lines.census import LineCensus, triplets
from lines.plucker import PLUCKER_NAMES, LineLabel, PluckerLine
from model.octanomial import (
    SPACE_VARIABLES,
    OctanomialCoefficients,
    coefficients_from_moduli,
    octanomial_cubic,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TropicalLineSignature:
    zero_pattern: tuple[bool, ...]
    vals: tuple[ExtValuation, ...]

    @classmethod
    def of(cls, line: PluckerLine, p: int) -> TropicalLineSignature:
        raw = valuations(line.p, p)
        low = min_valuation(v for v in raw if not v.is_infinite)
        shifted = tuple(INFINITY if v.is_infinite else v - int(low) for v in raw)
        return cls(line.zero_pattern, shifted)

    def to_json(self) -> dict[str, Any]:
        return {
            "zero_pattern": [int(z) for z in self.zero_pattern],
            "vals": [v.to_json() for v in self.vals],
        }


def signatures(census: LineCensus, p: int) -> dict[LineLabel, TropicalLineSignature]:
    return {line.label: TropicalLineSignature.of(line, p) for line in census}


@dataclass(frozen=True)
class DistinctnessReport:
    distinct: bool
    collision: tuple[LineLabel, LineLabel] | None = None
    collisions: tuple[tuple[LineLabel, LineLabel], ...] = ()

    def __bool__(self) -> bool:
        return self.distinct

    def to_json(self) -> dict[str, Any]:
        return {
            "distinct": self.distinct,
            "collision": [str(x) for x in self.collision] if self.collision else None,
            "collisions": [[str(a), str(b)] for a, b in self.collisions],
        }


def colliding_pairs(census: LineCensus, p: int) -> list[tuple[LineLabel, LineLabel]]:
    """Every pair of lines with equal signatures, in label order."""
    sigs = signatures(census, p)
    return [(a, b) for a, b in itertools.combinations(sorted(sigs), 2) if sigs[a] == sigs[b]]


def distinct_tropical_lines(census: LineCensus, p: int) -> DistinctnessReport:
    """True iff the 27 lines tropicalise to 27 different signatures.

    On failure the first colliding pair (in label order) is the witness and
    every colliding pair is listed.
    """
    pairs = colliding_pairs(census, p)
    if not pairs:
        return DistinctnessReport(True)
    logger.info("%d pairs of tropical lines coincide at p=%d, first %s and %s",
                len(pairs), p, *pairs[0])
    return DistinctnessReport(False, pairs[0], tuple(pairs))


# ---------------------------------------------------------------------------
# Triplets and the Newton polygon
# ---------------------------------------------------------------------------

def _axes(coordinate: str) -> tuple[int, int]:
    """``"p02"`` -> (0, 2)."""
    return int(coordinate[1]), int(coordinate[2])


def pencil_cubic(coefficients: OctanomialCoefficients, axes: tuple[int, int]) -> tuple[Any, ...]:
    """Cubic whose roots are the tritangent planes x_j = u·x_i through {x_i = x_j = 0}.

    The surface meets each plane of the pencil in the coordinate line plus a
    residual conic; the conic splits exactly when its determinant vanishes.
    That determinant is u times a cubic, the coordinate plane x_i = 0 sitting
    at u = ∞. Coefficients are returned constant term first.

    Raises:
        InvariantViolation: the stripped determinant is not a cubic.
    """
    i, j = axes
    _, gens = poly_ring(f"{SPACE_VARIABLES},u")
    space, u = list(gens[:4]), gens[4]
    image = list(space)
    image[j] = u * space[i]
    cubic = octanomial_cubic(coefficients).poly
    restricted = substitute(cubic, dict(zip(variable_names(cubic), image)))
    conic = exact_quotient(restricted, space[i])

    U, (t,) = poly_ring("u")
    entries: dict[tuple[int, int], Any] = {}
    for monom, coeff in conic.items():
        pair = tuple(n for n in range(4) for _ in range(monom[n]))
        entries[pair] = entries.get(pair, U.zero) + coeff * t ** monom[4]

    free = [n for n in range(4) if n != j]

    def entry(s: int, r: int) -> Any:
        value = entries.get((min(s, r), max(s, r)), U.zero)
        return 2 * value if s == r else value

    (m00, m01, m02), (m10, m11, m12), (m20, m21, m22) = (
        [entry(s, r) for r in free] for s in free
    )
    det = (
        m00 * (m11 * m22 - m12 * m21)
        - m01 * (m10 * m22 - m12 * m20)
        + m02 * (m10 * m21 - m11 * m20)
    )
    by_degree = {monom[0]: coeff for monom, coeff in det.items()}
    if not by_degree:
        raise InvariantViolation(f"Every plane through x{i} = x{j} = 0 is tritangent")
    low, high = min(by_degree), max(by_degree)
    if high - low != 3:
        raise InvariantViolation(
            f"Pencil through x{i} = x{j} = 0 has {high - low} tritangent planes off the coordinate planes"
        )
    return tuple(by_degree.get(k, QQ.zero) for k in range(low, high + 1))


def pencil_parameter(line: PluckerLine, axes: tuple[int, int]) -> Any:
    """The u with line ⊂ {x_j = u·x_i}, read off the points p_{·m} of the line."""
    i, j = axes

    def coord(a: int, b: int) -> Any:
        if a == b:
            return QQ.zero
        value = line.p[PLUCKER_NAMES.index(f"p{min(a, b)}{max(a, b)}")]
        return value if a < b else -value

    for m in (n for n in range(4) if n not in axes):
        if coord(i, m) != 0:
            return qq(coord(j, m)) / qq(coord(i, m))
    raise InvariantViolation(f"{line.label} lies in the plane x{i} = 0")


@dataclass(frozen=True)
class TripletCoordinate:
    """One pencil of tritangent planes met by a triplet, seen as the roots of a cubic."""

    lines: tuple[LineLabel, ...]
    coordinate: str
    cubic: tuple[Any, ...]
    roots_on_cubic: bool
    root_vals: tuple[ExtValuation, ...]
    newton_vals: tuple[ExtValuation, ...]

    @property
    def consistent(self) -> bool:
        return self.roots_on_cubic and self.root_vals == self.newton_vals

    @property
    def distinct(self) -> bool:
        return len(set(self.root_vals)) == len(self.root_vals)

    def to_json(self) -> dict[str, Any]:
        return {
            "lines": [str(x) for x in self.lines],
            "coordinate": self.coordinate,
            "cubic": [format_rational(c) for c in self.cubic],
            "roots_on_cubic": self.roots_on_cubic,
            "root_vals": [v.to_json() for v in self.root_vals],
            "newton_vals": [v.to_json() for v in self.newton_vals],
            "consistent": self.consistent,
        }


def triplet_root_valuations(
    census: LineCensus, p: int, coefficients: OctanomialCoefficients | None = None
) -> list[TripletCoordinate]:
    """Newton polygon of each triplet's pencil cubics against the census lines.

    A Plücker zero p_ij of a triplet means its three lines meet {x_i = x_j = 0};
    each spans a tritangent plane with it, so the three pencil parameters are
    the roots of ``pencil_cubic``, whose coefficients come from the surface alone.

    Args:
        census: Lines of the surface.
        p: Prime for the valuations.
        coefficients: Override for the surface coefficients (used to show that
            a perturbed surface no longer carries the census lines).
    """
    if coefficients is None:
        coefficients = coefficients_from_moduli(census.moduli)
    cubics: dict[tuple[int, int], tuple[Any, ...]] = {}
    results = []
    for pattern, labels in triplets(census).items():
        for k in (k for k, zero in enumerate(pattern) if zero):
            axes = _axes(PLUCKER_NAMES[k])
            if axes not in cubics:
                cubics[axes] = pencil_cubic(coefficients, axes)
            cubic = cubics[axes]
            roots = [pencil_parameter(census[x], axes) for x in labels]
            on_cubic = all(
                sum(c * r**n for n, c in enumerate(cubic)) == 0 for r in roots
            ) and len(set(roots)) == 3
            entry = TripletCoordinate(
                lines=labels,
                coordinate=PLUCKER_NAMES[k],
                cubic=cubic,
                roots_on_cubic=on_cubic,
                root_vals=tuple(sorted((valuation(r, p) for r in roots), reverse=True)),
                newton_vals=newton_root_valuations([valuation(c, p) for c in cubic]),
            )
            if not entry.consistent:
                logger.warning("Triplet pencil mismatch on %s", entry.to_json())
            results.append(entry)
    return results
