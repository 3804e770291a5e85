"""
Octodp — Octanomial Cubic
Builds the eight-term cubic surface from six moduli and checks it against the
plane-cubic parametrization x = F12 F34 F56, y = F13 F25 F46,
z = F12 F35 F46, w = F13 F24 F56.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, fields
from typing import Any

from sympy import QQ
from sympy.polys.rings import PolyElement

from errors import PreconditionError
from exact.polynomial import (
    from_terms,
    is_homogeneous,
    poly_from_json,
    poly_ring,
    poly_to_json,
    substitute,
)
from exact.rationals import format_rational, qq
from model.moduli import ModuliVector
from polytope.constants import EXPONENTS, LABELS

logger = logging.getLogger(__name__)

PLANE_VARIABLES = "X,Y,Z"
SPACE_VARIABLES = "x,y,z,w"

# Each basis cubic is a product of three lines through pairs of base points
BASIS_FACTORS: dict[str, tuple[tuple[int, int], ...]] = {
    "x": ((1, 2), (3, 4), (5, 6)),
    "y": ((1, 3), (2, 5), (4, 6)),
    "z": ((1, 2), (3, 5), (4, 6)),
    "w": ((1, 3), (2, 4), (5, 6)),
}

# Pairings (P, Q, R) of the six indices behind the quintics a, b, c, d
_QUINTIC_PAIRINGS: dict[str, tuple[tuple[int, int], ...]] = {
    "a": ((1, 3), (2, 4), (5, 6)),
    "b": ((1, 2), (3, 5), (4, 6)),
    "c": ((1, 3), (2, 5), (4, 6)),
    "d": ((1, 2), (3, 4), (5, 6)),
}

# e..h as -(sum of a triple)(sum of its complement) times three differences
_FACTORED_QUINTICS: dict[str, tuple[tuple[int, int, int], tuple[tuple[int, int], ...]]] = {
    "e": ((1, 3, 5), ((1, 5), (2, 6), (3, 4))),
    "f": ((1, 2, 4), ((1, 4), (2, 5), (3, 6))),
    "g": ((1, 3, 4), ((1, 4), (2, 6), (3, 5))),
    "h": ((1, 2, 5), ((1, 5), (3, 6), (2, 4))),
}


@dataclass(frozen=True)
class OctanomialCoefficients:
    """The coefficients a..h of a xyz + b xyw + c xzw + d yzw + e x²y + f xy² + g z²w + h zw²."""

    a: Any
    b: Any
    c: Any
    d: Any
    e: Any
    f: Any
    g: Any
    h: Any

    def __post_init__(self) -> None:
        for fld in fields(self):
            object.__setattr__(self, fld.name, qq(getattr(self, fld.name)))

    @classmethod
    def from_sequence(cls, values: Sequence[Any]) -> OctanomialCoefficients:
        if len(values) != 8:
            raise PreconditionError(f"Need 8 coefficients, got {len(values)}")
        return cls(*values)

    def as_tuple(self) -> tuple[Any, ...]:
        return tuple(getattr(self, k) for k in LABELS)

    def as_dict(self) -> dict[str, Any]:
        return {k: getattr(self, k) for k in LABELS}

    def total(self) -> Any:
        return sum(self.as_tuple(), QQ.zero)

    def replace(self, **changes: Any) -> OctanomialCoefficients:
        values = self.as_dict()
        values.update(changes)
        return OctanomialCoefficients(**values)

    def to_json(self) -> dict[str, str]:
        return {k: format_rational(v) for k, v in self.as_dict().items()}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> OctanomialCoefficients:
        return cls(**{k: qq(data[k]) for k in LABELS})


@dataclass(frozen=True)
class PlaneCubicBasis:
    """Four ternary cubics in X, Y, Z vanishing at the six base points."""

    x: PolyElement
    y: PolyElement
    z: PolyElement
    w: PolyElement

    def as_assignment(self) -> dict[str, PolyElement]:
        return {"x": self.x, "y": self.y, "z": self.z, "w": self.w}

    def __iter__(self):
        return iter((self.x, self.y, self.z, self.w))


@dataclass(frozen=True)
class QuaternaryCubic:
    """A homogeneous cubic in x, y, z, w."""

    poly: PolyElement

    def __post_init__(self) -> None:
        if self.poly and not is_homogeneous(self.poly, 3):
            raise PreconditionError("QuaternaryCubic must be homogeneous of degree 3")

    @property
    def support(self) -> set[tuple[int, ...]]:
        return {tuple(m) for m in self.poly.keys()}

    def __call__(self, point: Sequence[Any]) -> Any:
        return self.poly(*[qq(v) for v in point])

    def partials(self) -> tuple[PolyElement, ...]:
        """The four partial derivatives, in x, y, z, w order."""
        return tuple(self.poly.diff(g) for g in self.poly.ring.gens)

    def to_json(self) -> dict[str, Any]:
        return poly_to_json(self.poly)

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> QuaternaryCubic:
        return cls(poly_from_json(data))


# ---------------------------------------------------------------------------
# Coefficients a..h as quintics in the moduli
# ---------------------------------------------------------------------------

def _pairing_quintic(d: Sequence[Any], pairing: tuple[tuple[int, int], ...]) -> Any:
    (i, j), (k, l), (m, n) = ((d[s - 1], d[t - 1]) for s, t in pairing)
    P, Q, R = i * j, k * l, m * n
    sP, sQ, sR = i + j, k + l, m + n
    qP, qQ, qR = i * i + j * j, k * k + l * l, m * m + n * n
    cyclic = P * Q * (sP - sQ) + Q * R * (sQ - sR) + R * P * (sR - sP)
    mixed = R * sR * (qP - qQ) + P * sP * (qQ - qR) + Q * sQ * (qR - qP)
    return cyclic + mixed


def _factored_quintic(d: Sequence[Any], factors: tuple[tuple[int, int, int], tuple]) -> Any:
    triple, diffs = factors
    inside = sum((d[k - 1] for k in triple), QQ.zero)
    outside = sum((d[k - 1] for k in range(1, 7) if k not in triple), QQ.zero)
    value = -inside * outside
    for i, j in diffs:
        value *= d[i - 1] - d[j - 1]
    return value


def coefficients_from_moduli(d: ModuliVector | Sequence[Any]) -> OctanomialCoefficients:
    """Evaluate the eight quintics a..h at the moduli.

    Args:
        d: An admissible ``ModuliVector``. A raw sequence is accepted to
           evaluate on a root hyperplane; no admissibility check is made then.

    Returns:
        The unnormalised coefficient vector; its entries sum to zero.
    """
    values = d.d if isinstance(d, ModuliVector) else tuple(qq(v) for v in d)
    coeffs = {k: _pairing_quintic(values, pairing) for k, pairing in _QUINTIC_PAIRINGS.items()}
    coeffs.update({k: _factored_quintic(values, factors) for k, factors in _FACTORED_QUINTICS.items()})
    return OctanomialCoefficients(**coeffs)


# ---------------------------------------------------------------------------
# Plane cubics and the octanomial
# ---------------------------------------------------------------------------

def pair_line(d: Sequence[Any], i: int, j: int) -> tuple[Any, Any, Any]:
    """Coefficients (X, Y, Z) of the plane line F_ij through p_i and p_j."""
    di, dj = qq(d[i - 1]), qq(d[j - 1])
    return (di * dj * (di + dj), -(di * di + di * dj + dj * dj), QQ.one)


def linear_form(d: Sequence[Any], i: int, j: int) -> PolyElement:
    _, (X, Y, Z) = poly_ring(PLANE_VARIABLES)
    cx, cy, cz = pair_line(d, i, j)
    return cx * X + cy * Y + cz * Z


def plane_cubic_basis(d: ModuliVector) -> PlaneCubicBasis:
    """The cubics x, y, z, w as products of pair lines."""
    cubics = {}
    for name, pairs in BASIS_FACTORS.items():
        R, _ = poly_ring(PLANE_VARIABLES)
        cubic = R.one
        for i, j in pairs:
            cubic *= linear_form(d, i, j)
        cubics[name] = cubic
    return PlaneCubicBasis(**cubics)


def octanomial_cubic(c: OctanomialCoefficients) -> QuaternaryCubic:
    R, _ = poly_ring(SPACE_VARIABLES)
    return QuaternaryCubic(from_terms(R, {EXPONENTS[k]: v for k, v in c.as_dict().items()}))


def verify_parametrization(
    d: ModuliVector, coefficients: OctanomialCoefficients | None = None
) -> bool:
    """True iff the octanomial vanishes identically on the plane-cubic basis.

    Args:
        d: Admissible moduli.
        coefficients: Override for the coefficients of ``d`` (used to show
            that a perturbed vector leaves a nonzero residual).
    """
    if coefficients is None:
        coefficients = coefficients_from_moduli(d)
    cubic = octanomial_cubic(coefficients)
    residual = substitute(cubic.poly, plane_cubic_basis(d).as_assignment())
    if residual:
        logger.debug("Parametrization residual has %d terms for d=%s", len(residual), d)
    return not residual
