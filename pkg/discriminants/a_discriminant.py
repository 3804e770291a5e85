"""
Octodp — A-Discriminant
The 49-term A-discriminant of the octanomial support and the factored
degree-32 discriminant of the cubic surface.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from sympy import QQ
from sympy.polys.rings import PolyElement

from config import settings
from errors import PreconditionError
from exact.polynomial import from_terms, grlex_terms, poly_ring
from exact.rationals import format_rational
from model.octanomial import OctanomialCoefficients
from model.symmetry import symmetry_action_on_coefficients
from polytope.constants import LABELS

logger = logging.getLogger(__name__)

COEFFICIENT_VARIABLES = ",".join(LABELS)
DISCRIMINANT_CONSTANT = 2**16 * 3**5
DELTA_FILE = "delta_a.txt"

# Binomial factors supported on the quadrilateral facets
BINOMIAL_FACTORS: tuple[tuple[str, str, str], ...] = (
    ("ac-eg", "ac", "eg"),
    ("ad-fg", "ad", "fg"),
    ("bc-eh", "bc", "eh"),
    ("bd-fh", "bd", "fh"),
)


@dataclass(frozen=True)
class ADiscriminant:
    """The A-discriminant as a polynomial in a..h."""

    poly: PolyElement

    @property
    def terms(self) -> list[tuple[tuple[int, ...], Any]]:
        return grlex_terms(self.poly)

    def __len__(self) -> int:
        return len(self.poly)

    def coefficient(self, exponents: tuple[int, ...]) -> Any:
        return self.poly.get(tuple(exponents), QQ.zero)

    def __call__(self, c: OctanomialCoefficients) -> Any:
        return self.poly(*c.as_tuple())

    def term_values(self, c: OctanomialCoefficients) -> list[tuple[tuple[int, ...], Any]]:
        """Each term evaluated at c, in grlex order."""
        values = c.as_tuple()
        out = []
        for monom, coeff in self.terms:
            v = coeff
            for x, e in zip(values, monom):
                if e:
                    v *= x**e
            out.append((monom, v))
        return out


def load_delta_terms(path: Path) -> dict[tuple[int, ...], Any]:
    """Parse the term file: ``coefficient e_a e_b ... e_h`` per line, ``#`` comments."""
    terms: dict[tuple[int, ...], Any] = {}
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 1 + len(LABELS):
                raise PreconditionError(f"{path.name}:{lineno}: expected 9 fields, got {len(parts)}")
            monom = tuple(int(e) for e in parts[1:])
            if monom in terms:
                raise PreconditionError(f"{path.name}:{lineno}: duplicate monomial {monom}")
            terms[monom] = QQ(int(parts[0]), 1)
    return terms


@functools.lru_cache(maxsize=4)
def a_discriminant(path: Path | None = None) -> ADiscriminant:
    """Load the fixed A-discriminant (cached per path)."""
    path = path or settings.data_dir / DELTA_FILE
    R, _ = poly_ring(COEFFICIENT_VARIABLES)
    poly = from_terms(R, load_delta_terms(path))
    logger.debug("Loaded A-discriminant with %d terms from %s", len(poly), path)
    return ADiscriminant(poly)


def binomial_value(c: OctanomialCoefficients, first: str, second: str) -> Any:
    v = c.as_dict()
    return v[first[0]] * v[first[1]] - v[second[0]] * v[second[1]]


@dataclass(frozen=True)
class DiscriminantReport:
    """Factored evaluation of the degree-32 discriminant."""

    full_discriminant: Any
    a_disc_value: Any
    principal_value: Any
    vanishing_factor: str | None

    @property
    def is_smooth(self) -> bool:
        return self.full_discriminant != 0

    def to_json(self) -> dict[str, Any]:
        return {
            "full_discriminant": format_rational(self.full_discriminant),
            "a_discriminant": format_rational(self.a_disc_value),
            "principal_a_determinant": format_rational(self.principal_value),
            "is_smooth": self.is_smooth,
            "vanishing_factor": self.vanishing_factor,
        }


def discriminant_factors(
    c: OctanomialCoefficients, delta: ADiscriminant | None = None
) -> list[tuple[str, Any, int]]:
    """Labelled factors (label, value, exponent) of the full discriminant."""
    delta = delta if delta is not None else a_discriminant()
    v = c.as_dict()
    factors = [(k, v[k], 2) for k in "efgh"]
    factors += [(label, binomial_value(c, m1, m2), 2) for label, m1, m2 in BINOMIAL_FACTORS]
    factors.append(("delta_A", delta(c), 1))
    return factors


def full_discriminant(
    c: OctanomialCoefficients, delta: ADiscriminant | None = None
) -> DiscriminantReport:
    """Evaluate the factored discriminant and report the first vanishing factor."""
    delta = delta if delta is not None else a_discriminant()
    value = QQ(DISCRIMINANT_CONSTANT, 1)
    vanishing = None
    a_disc = QQ.zero
    for label, factor, power in discriminant_factors(c, delta):
        value *= factor**power
        if label == "delta_A":
            a_disc = factor
        if factor == 0 and vanishing is None:
            vanishing = label
    return DiscriminantReport(
        full_discriminant=value,
        a_disc_value=a_disc,
        principal_value=principal_a_determinant(c, delta),
        vanishing_factor=vanishing,
    )


def principal_a_determinant(c: OctanomialCoefficients, delta: ADiscriminant | None = None) -> Any:
    """E_A = abcd · e²f²g²h² · (ac-eg)(ad-fg)(bc-eh)(bd-fh) · Δ_A, evaluated exactly."""
    delta = delta if delta is not None else a_discriminant()
    v = c.as_dict()
    value = v["a"] * v["b"] * v["c"] * v["d"]
    for k in "efgh":
        value *= v[k] ** 2
    for _, m1, m2 in BINOMIAL_FACTORS:
        value *= binomial_value(c, m1, m2)
    return value * delta(c)


def delta_invariant(c: OctanomialCoefficients, delta: ADiscriminant | None = None) -> bool:
    """Δ_A takes one value on the whole symmetry orbit of c."""
    delta = delta if delta is not None else a_discriminant()
    value = delta(c)
    return all(delta(image) == value for image in symmetry_action_on_coefficients(c).values())
